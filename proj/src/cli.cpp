#include "cechctx/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cechctx/analysis.hpp"
#include "cechctx/corpus.hpp"
#include "cechctx/document.hpp"
#include "cechctx/errors.hpp"
#include "cechctx/report.hpp"

namespace cechctx {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Ring> rings_from(const std::string& name) {
    if (name == "z") return {Ring::integers};
    if (name == "z2") return {Ring::mod2};
    return {Ring::mod2, Ring::integers};
}

std::string ring_title(Ring r) { return r == Ring::integers ? "Z" : "Z/2"; }

std::string read_source(const std::string& file, std::ostream& err) {
    namespace fs = std::filesystem;
    if (fs::exists(file)) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw UsageError("cannot read '" + file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    const auto stem = fs::path(file).stem().string();
    if (auto text = corpus_text(stem)) {
        err << "note: '" << file << "' not found; using the bundled example '" << stem << "'\n";
        return std::string(*text);
    }
    throw UsageError("no such file '" + file + "'");
}

std::string bundled(const std::string& name) {
    auto text = corpus_text(name);
    if (!text) {
        std::string names;
        for (auto n : corpus_names()) names += (names.empty() ? "" : ", ") + std::string(n);
        throw UsageError("unknown example '" + name + "' (available: " + names + ")");
    }
    return std::string(*text);
}

// Possibilistic signalling in a support input is reported like a signalling distribution.
LoadedModel load_checked(std::string_view text) {
    auto m = load_model(parse_scenario(text));
    const auto& sc = m.scenario;
    std::vector<std::string> problems;
    for (const auto& v : m.support.consistency_violations()) {
        const auto [has, lacks] = v.present_in_first ? std::pair{v.first, v.second} : std::pair{v.second, v.first};
        problems.push_back("possibilistic signalling: " + sc.format_section(v.section) + " occurs in the support of context " +
                           std::to_string(has) + " " + m.context_label(has) + " but not of context " +
                           std::to_string(lacks) + " " + m.context_label(lacks));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return m;
}

void print_warnings(const LoadedModel& m, std::ostream& err) {
    for (const auto& w : m.scenario.warnings()) err << "warning: " << w << "\n";
}

int cmd_validate(const std::string& text, std::ostream& out, std::ostream& err) {
    auto m = load_checked(text);
    print_warnings(m, err);
    const auto& sc = m.scenario;
    out << "valid: " << (m.document.name.empty() ? "(unnamed)" : m.document.name) << " with "
        << sc.measurements().size() << " measurements, " << sc.num_outcomes() << " outcomes, " << sc.num_contexts()
        << " contexts; " << (m.empirical ? "distribution" : "support") << " input; "
        << (m.empirical ? "no-signalling holds" : "support is restriction-consistent") << "\n";
    return exit_ok;
}

int cmd_classify(const std::string& text, std::ostream& out, std::ostream& err) {
    auto m = load_checked(text);
    print_warnings(m, err);
    auto c = classify(m.support);
    out << describe(c.verdict) << "; " << c.global_sections.size() << " global sections\n";
    for (const auto& g : c.global_sections) out << "  " << m.scenario.format_section(g) << "\n";
    for (const auto& f : c.witnesses) {
        out << "  [" << f.context << "] " << m.context_label(f.context) << " " << m.tuple_of(f.context, f.section) << ": "
            << (f.extendable ? "extendable" : "not extendable") << "\n";
    }
    return exit_ok;
}

struct ObstructionArgs {
    std::string ring = "both";
    std::size_t context = 0;
    std::string section;
    bool single = false;
    bool witness = false;
};

int cmd_obstruction(const std::string& text, const ObstructionArgs& a, std::ostream& out, std::ostream& err) {
    auto m = load_checked(text);
    print_warnings(m, err);
    if (!a.single) {
        ReportOptions options{rings_from(a.ring), a.witness};
        auto r = build_report(m, options);
        for (std::size_t k = 0; k < r.rings.size(); ++k) out << (k ? "\n" : "") << render_ring_report(r, r.rings[k]);
        return exit_ok;
    }
    if (a.context >= m.scenario.num_contexts()) {
        throw UsageError("context index " + std::to_string(a.context) + " out of range (model has " +
                         std::to_string(m.scenario.num_contexts()) + " contexts)");
    }
    Section t;
    try {
        t = m.section_from_tuple(a.context, a.section);
    } catch (const DomainError& e) {
        throw UsageError(std::string("bad --section: ") + e.what());
    }
    if (!m.support.contains(a.context, t)) {
        throw UsageError("section " + a.section + " is not in the support of context " + std::to_string(a.context) + " " +
                         m.context_label(a.context));
    }
    const bool extendable = is_extendable_at(m.support, a.context, t);
    for (auto ring : rings_from(a.ring)) {
        auto res = obstruction(m.support, a.context, t, ring);
        if (res.vanishes && !verify_witness(m.support, a.context, t, res.witness, ring)) {
            throw VerificationError("witness family failed re-verification");
        }
        auto entry = make_obstruction_entry(m, res, extendable, a.witness);
        out << "Over " << ring_title(ring) << ":\n" << render_obstruction_entry(m.document.contexts, entry);
    }
    return exit_ok;
}

struct ReportArgs {
    std::string ring = "both";
    bool json = false;
    bool witness = false;
};

int cmd_report(const std::string& text, const ReportArgs& a, std::ostream& out, std::ostream& err) {
    auto m = load_checked(text);
    if (!a.json) print_warnings(m, err);
    auto r = build_report(m, ReportOptions{rings_from(a.ring), a.witness});
    out << emit_report(r, a.json);
    return exit_ok;
}

void add_ring_option(CLI::App* app, std::string& ring) {
    app->add_option("--ring", ring, "Coefficient ring: z2, z or both")
        ->check(CLI::IsMember({"z2", "z", "both"}))
        ->capture_default_str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contextuality analysis of empirical models via Cech cohomology obstructions", "cechctx"};
    app.require_subcommand(1);

    std::string file;

    auto* validate = app.add_subcommand("validate", "Check a scenario file (schema, cover, sums, no-signalling)");
    validate->add_option("file", file, "Scenario JSON file")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Enumerate global sections and classify the support");
    classify_cmd->add_option("file", file, "Scenario JSON file")->required();

    ObstructionArgs oargs;
    auto* obstr = app.add_subcommand("obstruction", "Decide whether cohomology obstructions vanish");
    obstr->add_option("file", file, "Scenario JSON file")->required();
    add_ring_option(obstr, oargs.ring);
    auto* ctx_opt = obstr->add_option("--context", oargs.context, "Context index (cover order)");
    auto* sec_opt = obstr->add_option("--section", oargs.section, "Outcome tuple in declared member order, e.g. 0,1");
    auto* all_flag = obstr->add_flag("--all", "Every support section (default)");
    ctx_opt->needs(sec_opt);
    sec_opt->needs(ctx_opt);
    all_flag->excludes(ctx_opt);
    all_flag->excludes(sec_opt);
    obstr->add_flag("--witness", oargs.witness, "Print witness families and certificates");

    ReportArgs rargs;
    auto* report = app.add_subcommand("report", "Full analysis report");
    report->add_option("file", file, "Scenario JSON file")->required();
    add_ring_option(report, rargs.ring);
    report->add_flag("--json", rargs.json, "Machine-readable output");
    report->add_flag("--witness", rargs.witness, "Include witness families and certificates");

    auto* examples = app.add_subcommand("examples", "Bundled example scenarios");
    examples->require_subcommand(1);
    auto* ex_list = examples->add_subcommand("list", "List bundled examples");
    std::string name;
    auto* ex_show = examples->add_subcommand("show", "Print the scenario file of an example");
    ex_show->add_option("name", name, "Example name")->required();
    ReportArgs eargs;
    auto* ex_run = examples->add_subcommand("run", "Report on an example");
    ex_run->add_option("name", name, "Example name")->required();
    add_ring_option(ex_run, eargs.ring);
    ex_run->add_flag("--json", eargs.json, "Machine-readable output");
    ex_run->add_flag("--witness", eargs.witness, "Include witness families and certificates");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (validate->parsed()) return cmd_validate(read_source(file, err), out, err);
        if (classify_cmd->parsed()) return cmd_classify(read_source(file, err), out, err);
        if (obstr->parsed()) {
            oargs.single = ctx_opt->count() > 0;
            return cmd_obstruction(read_source(file, err), oargs, out, err);
        }
        if (report->parsed()) return cmd_report(read_source(file, err), rargs, out, err);
        if (ex_list->parsed()) {
            for (auto n : corpus_names()) out << n << "\n";
            return exit_ok;
        }
        if (ex_show->parsed()) {
            out << bundled(name);
            return exit_ok;
        }
        if (ex_run->parsed()) return cmd_report(bundled(name), eargs, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        for (const auto& p : e.problems()) err << "invalid model: " << p << "\n";
        return exit_invalid_model;
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << "\n";
        return exit_verification_failure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    err << "error: no command\n";
    return exit_usage;
}

}  // namespace cechctx
