#include "cechctx/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cechctx/errors.hpp"

namespace cechctx {

// ---------------------------------------------------------------------------
// LinearCombination

LinearCombination LinearCombination::unit(const Section& s, Ring ring) {
    LinearCombination out(s.domain, ring);
    out.add(s, 1);
    return out;
}

Integer LinearCombination::coefficient(const Section& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Integer(0) : it->second;
}

void LinearCombination::add(const Section& s, const Integer& c) {
    if (s.domain != domain_) throw DomainError("section domain does not match the combination's domain");
    auto it = terms_.find(s);
    Integer value = reduce((it == terms_.end() ? Integer(0) : it->second) + c, ring_);
    if (sgn(value) == 0) {
        if (it != terms_.end()) terms_.erase(it);
    } else if (it == terms_.end()) {
        terms_.emplace(s, std::move(value));
    } else {
        it->second = std::move(value);
    }
}

LinearCombination& LinearCombination::operator+=(const LinearCombination& o) {
    if (o.domain_ != domain_) throw DomainError("adding combinations over different domains");
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

LinearCombination& LinearCombination::operator-=(const LinearCombination& o) {
    if (o.domain_ != domain_) throw DomainError("subtracting combinations over different domains");
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
}

LinearCombination operator*(const Integer& k, const LinearCombination& a) {
    LinearCombination out(a.domain_, a.ring_);
    for (const auto& [s, c] : a.terms_) out.add(s, k * c);
    return out;
}

LinearCombination push_forward(const SectionMap& f, MeasurementSet codomain, const LinearCombination& phi) {
    LinearCombination out(codomain, phi.ring());
    for (const auto& [x, c] : phi.terms()) {
        auto it = f.find(x);
        if (it == f.end()) throw DomainError("push-forward: section outside the domain of the map");
        out.add(it->second, c);
    }
    return out;
}

LinearCombination restrict_combination(const LinearCombination& r, MeasurementSet target) {
    if (!target.is_subset_of(r.domain())) throw DomainError("restriction target is not a subset of the domain");
    SectionMap f;
    for (const auto& [x, c] : r.terms()) f.emplace(x, restrict_section(x, target));
    return push_forward(f, target, r);
}

Integer coefficient_sum(const LinearCombination& r) {
    Integer sum = 0;
    for (const auto& [s, c] : r.terms()) sum += c;
    return reduce(sum, r.ring());
}

// ---------------------------------------------------------------------------
// CochainComplex

namespace {

std::vector<std::string> describe(const Scenario& sc, const std::vector<SupportViolation>& violations) {
    std::vector<std::string> out;
    for (const auto& v : violations) {
        out.push_back("possibilistic signalling between contexts " + std::to_string(v.first) + " and " +
                      std::to_string(v.second) + ": section " + sc.format_section(v.section) + " only arises in context " +
                      std::to_string(v.present_in_first ? v.first : v.second));
    }
    return out;
}

void require_consistent(const SupportModel& model) {
    if (auto v = model.consistency_violations(); !v.empty()) throw ValidationError(describe(model.scenario(), v));
}

std::size_t position_in(const std::vector<Section>& basis, const Section& s) {
    auto it = std::lower_bound(basis.begin(), basis.end(), s);
    if (it == basis.end() || *it != s) throw DomainError("section is not in the support basis of its simplex");
    return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

CochainComplex::CochainComplex(const SupportModel& model, Ring ring, std::size_t max_degree)
    : model_(model), ring_(ring), nerve_(nerve(model.scenario(), max_degree)) {
    require_consistent(model_);
    for (const auto& layer : nerve_) {
        std::vector<std::vector<Section>> bases;
        std::map<std::vector<ContextIndex>, std::size_t> index;
        std::vector<std::size_t> offsets{0};
        for (std::size_t i = 0; i < layer.size(); ++i) {
            bases.push_back(model_.restricted_support(layer[i].vertices.front(), layer[i].carrier));
            index.emplace(layer[i].vertices, i);
            offsets.push_back(offsets.back() + bases.back().size());
        }
        bases_.push_back(std::move(bases));
        index_.push_back(std::move(index));
        offsets_.push_back(std::move(offsets));
    }
}

std::size_t CochainComplex::dimension(std::size_t q) const { return offsets_.at(q).back(); }

std::optional<std::size_t> CochainComplex::simplex_index(std::size_t q, const std::vector<ContextIndex>& vertices) const {
    auto it = index_.at(q).find(vertices);
    if (it == index_.at(q).end()) return std::nullopt;
    return it->second;
}

Cochain CochainComplex::zero(std::size_t q) const {
    Cochain out{q, {}};
    for (const auto& s : nerve_.at(q)) out.values.emplace_back(s.carrier, ring_);
    return out;
}

Cochain CochainComplex::family_cochain(std::vector<LinearCombination> family) const {
    if (family.size() != nerve_[0].size()) throw DomainError("family must have one combination per context");
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].domain() != nerve_[0][i].carrier) throw DomainError("family member has the wrong domain");
    }
    return Cochain{0, std::move(family)};
}

void CochainComplex::check_degree(const Cochain& w) const {
    if (w.degree >= nerve_.size() || w.values.size() != nerve_[w.degree].size()) {
        throw DomainError("cochain does not match the nerve in degree " + std::to_string(w.degree));
    }
}

std::vector<Integer> CochainComplex::to_vector(const Cochain& w) const {
    check_degree(w);
    std::vector<Integer> out(dimension(w.degree));
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        for (const auto& [s, c] : w.values[i].terms()) {
            out[offsets_[w.degree][i] + position_in(bases_[w.degree][i], s)] = c;
        }
    }
    return out;
}

Cochain CochainComplex::from_vector(std::size_t q, const std::vector<Integer>& coords) const {
    if (coords.size() != dimension(q)) throw DomainError("coordinate vector has the wrong length");
    auto out = zero(q);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        for (std::size_t k = 0; k < bases_[q][i].size(); ++k) out.values[i].add(bases_[q][i][k], coords[offsets_[q][i] + k]);
    }
    return out;
}

Cochain CochainComplex::coboundary(const Cochain& w) const {
    check_degree(w);
    const auto q = w.degree;
    if (q + 1 >= nerve_.size()) throw DomainError("coboundary needs the nerve one degree higher");
    auto out = zero(q + 1);
    const auto& sc = model_.scenario();
    for (std::size_t i = 0; i < nerve_[q + 1].size(); ++i) {
        const auto& sigma = nerve_[q + 1][i];
        for (std::size_t j = 0; j <= q + 1; ++j) {
            auto tau = face(sc, sigma, j);
            auto term = restrict_combination(w.values[*simplex_index(q, tau.vertices)], sigma.carrier);
            if (j % 2 == 0) {
                out.values[i] += term;
            } else {
                out.values[i] -= term;
            }
        }
    }
    return out;
}

IntMatrix CochainComplex::coboundary_matrix(std::size_t q) const {
    if (q + 1 >= nerve_.size()) throw DomainError("coboundary needs the nerve one degree higher");
    IntMatrix m(dimension(q + 1), dimension(q));
    const auto& sc = model_.scenario();
    for (std::size_t i = 0; i < nerve_[q + 1].size(); ++i) {
        const auto& sigma = nerve_[q + 1][i];
        for (std::size_t j = 0; j <= q + 1; ++j) {
            auto t = *simplex_index(q, face(sc, sigma, j).vertices);
            for (std::size_t k = 0; k < bases_[q][t].size(); ++k) {
                auto v = restrict_section(bases_[q][t][k], sigma.carrier);
                auto row = offsets_[q + 1][i] + position_in(bases_[q + 1][i], v);
                m(row, offsets_[q][t] + k) += (j % 2 == 0) ? 1 : -1;
            }
        }
    }
    return m;
}

bool CochainComplex::is_cocycle(const Cochain& w) const {
    auto d = coboundary(w);
    return std::all_of(d.values.begin(), d.values.end(), [](const LinearCombination& r) { return r.is_zero(); });
}

bool CochainComplex::is_relative_to(const Cochain& w, ContextIndex base) const {
    check_degree(w);
    const auto base_set = model_.scenario().context(base).members;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        auto target = nerve_[w.degree][i].carrier & base_set;
        if (!restrict_combination(w.values[i], target).is_zero()) return false;
    }
    return true;
}

Cochain coboundary(const CochainComplex& complex, const Cochain& w) { return complex.coboundary(w); }

IntMatrix coboundary_matrix(const SupportModel& model, Ring ring, std::size_t q) {
    return CochainComplex(model, ring, q + 1).coboundary_matrix(q);
}

// ---------------------------------------------------------------------------
// Obstruction

ObstructionSystem build_obstruction_system(const SupportModel& model, ContextIndex base, const Section& t) {
    const auto& sc = model.scenario();
    if (base >= sc.num_contexts() || !model.contains(base, t)) {
        throw DomainError("section is not in the support of the base context");
    }
    require_consistent(model);

    ObstructionSystem sys;
    std::vector<std::map<Section, std::size_t>> var_of(sc.num_contexts());
    for (ContextIndex j = 0; j < sc.num_contexts(); ++j) {
        if (j == base) continue;
        for (const auto& u : model.support(j)) {
            var_of[j].emplace(u, sys.variables.size());
            sys.variables.emplace_back(j, u);
        }
    }

    struct Row {
        std::map<std::size_t, Integer> entries;
        Integer rhs;
    };
    std::vector<Row> rows;
    auto accumulate = [&](Row& row, ContextIndex ctx, const Section& u, int sign) {
        if (ctx == base) {
            if (u == t) row.rhs -= sign;
            return;
        }
        auto& e = row.entries[var_of[ctx].at(u)];
        e += sign;
        if (sgn(e) == 0) row.entries.erase(var_of[ctx].at(u));
    };
    for (ContextIndex j = 0; j < sc.num_contexts(); ++j) {
        for (ContextIndex k = j + 1; k < sc.num_contexts(); ++k) {
            const auto overlap = sc.context(j).members & sc.context(k).members;
            if (overlap.empty()) continue;
            for (const auto& v : model.restricted_support(j, overlap)) {
                Row row;
                for (const auto& u : model.support(j)) {
                    if (restrict_section(u, overlap) == v) accumulate(row, j, u, +1);
                }
                for (const auto& u : model.support(k)) {
                    if (restrict_section(u, overlap) == v) accumulate(row, k, u, -1);
                }
                if (row.entries.empty() && sgn(row.rhs) == 0) continue;
                rows.push_back(std::move(row));
            }
        }
    }

    sys.matrix = IntMatrix(rows.size(), sys.variables.size());
    sys.rhs.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, v] : rows[r].entries) sys.matrix(r, c) = v;
        sys.rhs[r] = rows[r].rhs;
    }
    sys.reduced_variables = sys.variables.size();
    return sys;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

struct Identification {
    std::vector<std::size_t> class_of;  // variable -> reduced column
    std::size_t classes = 0;
    std::vector<std::size_t> tree_rows;  // rows c_a − c_b = 0 spanning each class
};

Identification identify_variables(const ObstructionSystem& sys) {
    const auto n = sys.matrix.cols();
    UnionFind uf(n);
    Identification id;
    for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
        if (sgn(sys.rhs[r]) != 0) continue;
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < n && nz.size() <= 2; ++c) {
            if (sgn(sys.matrix(r, c)) != 0) nz.push_back(c);
        }
        if (nz.size() != 2 || sys.matrix(r, nz[0]) + sys.matrix(r, nz[1]) != 0 || abs(sys.matrix(r, nz[0])) != 1) {
            continue;
        }
        if (uf.unite(nz[0], nz[1])) id.tree_rows.push_back(r);
    }
    std::map<std::size_t, std::size_t> column_of_root;
    id.class_of.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = column_of_root.emplace(uf.find(v), column_of_root.size());
        id.class_of[v] = it->second;
    }
    id.classes = column_of_root.size();
    return id;
}

// Turns a certificate for the merged system into one for the full system by
// adding multiples of the identification rows (right-hand side 0), which moves
// each class's column weight onto a single representative.
Certificate lift_certificate(const ObstructionSystem& sys, const Identification& id, const std::vector<std::size_t>& kept_rows,
                             const Certificate& reduced) {
    const auto& a = sys.matrix;
    Certificate out{reduced.ring, std::vector<mpq_class>(a.rows(), 0), reduced.reason};
    for (std::size_t r = 0; r < kept_rows.size(); ++r) out.multipliers[kept_rows[r]] = reduced.multipliers[r];

    std::vector<mpq_class> weight(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (sgn(out.multipliers[r]) == 0) continue;
        for (std::size_t c = 0; c < a.cols(); ++c) weight[c] += out.multipliers[r] * mpq_class(a(r, c));
    }

    // Spanning forest over variables; peel leaves towards their parents.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(a.cols());  // (neighbour, row)
    for (auto r : id.tree_rows) {
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (sgn(a(r, c)) != 0) nz.push_back(c);
        }
        adj[nz[0]].emplace_back(nz[1], r);
        adj[nz[1]].emplace_back(nz[0], r);
    }
    std::vector<bool> seen(a.cols(), false);
    for (std::size_t root = 0; root < a.cols(); ++root) {
        if (seen[root]) continue;
        std::vector<std::size_t> order{root};
        std::vector<std::pair<std::size_t, std::size_t>> parent(a.cols());  // (parent, row)
        seen[root] = true;
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (auto [nb, r] : adj[order[i]]) {
                if (seen[nb]) continue;
                seen[nb] = true;
                parent[nb] = {order[i], r};
                order.push_back(nb);
            }
        }
        for (std::size_t i = order.size(); i-- > 1;) {
            const auto v = order[i];
            const auto [p, r] = parent[v];
            mpq_class lambda = -weight[v] / mpq_class(a(r, v));
            out.multipliers[r] += lambda;
            weight[v] += lambda * mpq_class(a(r, v));
            weight[p] += lambda * mpq_class(a(r, p));
        }
    }
    for (auto& m : out.multipliers) {
        m.canonicalize();
        if (out.ring == Ring::mod2) m = reduce(m.get_num(), Ring::mod2);
    }
    return out;
}

std::vector<LinearCombination> family_from(const SupportModel& model, ContextIndex base, const Section& t,
                                           const ObstructionSystem& sys, const std::vector<Integer>& x, Ring ring) {
    std::vector<LinearCombination> family;
    for (const auto& c : model.scenario().contexts()) family.emplace_back(c.members, ring);
    family[base].add(t, 1);
    for (std::size_t v = 0; v < sys.variables.size(); ++v) {
        const auto& [ctx, u] = sys.variables[v];
        family[ctx].add(u, x[v]);
    }
    return family;
}

}  // namespace

bool verify_witness(const SupportModel& model, ContextIndex base, const Section& t,
                    const std::vector<LinearCombination>& family, Ring ring) {
    const auto& sc = model.scenario();
    if (family.size() != sc.num_contexts()) return false;
    if (family[base] != LinearCombination::unit(t, ring)) return false;
    for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
        if (family[i].domain() != sc.context(i).members || family[i].ring() != ring) return false;
        for (const auto& [s, c] : family[i].terms()) {
            if (!model.contains(i, s)) return false;
        }
    }
    for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
        for (ContextIndex j = i + 1; j < sc.num_contexts(); ++j) {
            auto overlap = sc.context(i).members & sc.context(j).members;
            if (overlap.empty()) continue;
            if (restrict_combination(family[i], overlap) != restrict_combination(family[j], overlap)) return false;
        }
    }
    return true;
}

ObstructionResult obstruction(const SupportModel& model, ContextIndex base, const Section& t, Ring ring,
                              ObstructionOptions options) {
    ObstructionResult result;
    result.ring = ring;
    result.base_context = base;
    result.base_section = t;
    result.system = build_obstruction_system(model, base, t);
    auto& sys = result.system;

    std::optional<std::vector<Integer>> x;
    if (!options.identify_variables) {
        auto solved = solve_linear(sys.matrix, sys.rhs, ring);
        x = std::move(solved.solution);
        result.certificate = std::move(solved.certificate);
    } else {
        auto id = identify_variables(sys);
        sys.reduced_variables = id.classes;
        std::vector<std::size_t> kept_rows;
        std::vector<std::map<std::size_t, Integer>> merged;
        for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
            std::map<std::size_t, Integer> row;
            for (std::size_t c = 0; c < sys.matrix.cols(); ++c) {
                if (sgn(sys.matrix(r, c)) != 0) row[id.class_of[c]] += sys.matrix(r, c);
            }
            std::erase_if(row, [](const auto& kv) { return sgn(kv.second) == 0; });
            if (row.empty() && sgn(sys.rhs[r]) == 0) continue;
            kept_rows.push_back(r);
            merged.push_back(std::move(row));
        }
        IntMatrix a(kept_rows.size(), id.classes);
        std::vector<Integer> b(kept_rows.size());
        for (std::size_t r = 0; r < kept_rows.size(); ++r) {
            for (const auto& [c, v] : merged[r]) a(r, c) = v;
            b[r] = sys.rhs[kept_rows[r]];
        }
        auto solved = solve_linear(a, b, ring);
        if (solved.solution) {
            x.emplace(sys.variables.size());
            for (std::size_t v = 0; v < sys.variables.size(); ++v) (*x)[v] = (*solved.solution)[id.class_of[v]];
        } else {
            result.certificate = lift_certificate(sys, id, kept_rows, *solved.certificate);
        }
    }

    if (x) {
        if (!verify_solution(sys.matrix, *x, sys.rhs, ring)) {
            throw VerificationError("obstruction solution fails substitution into the full system");
        }
        result.vanishes = true;
        result.witness = family_from(model, base, t, sys, *x, ring);
        if (!verify_witness(model, base, t, result.witness, ring)) {
            throw VerificationError("witness family fails the restriction re-check");
        }
    } else if (!result.certificate || !verify_certificate(sys.matrix, sys.rhs, *result.certificate)) {
        throw VerificationError("unsolvability certificate fails its re-check");
    }
    return result;
}

std::vector<ObstructionResult> all_obstructions(const SupportModel& model, Ring ring, ObstructionOptions options) {
    std::vector<ObstructionResult> out;
    for (const auto& c : model.scenario().contexts()) {
        for (const auto& s : model.support(c.index)) out.push_back(obstruction(model, c.index, s, ring, options));
    }
    return out;
}

}  // namespace cechctx
