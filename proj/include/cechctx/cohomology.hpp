#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cechctx/linalg.hpp"
#include "cechctx/model.hpp"

namespace cechctx {

/// A finite formal R-linear combination of sections over a fixed domain U,
/// i.e. an element of F_R(E(U)). Zero coefficients are never stored.
class LinearCombination {
public:
    LinearCombination(MeasurementSet domain, Ring ring) : domain_(domain), ring_(ring) {}

    /// The embedding s ↦ 1·s.
    static LinearCombination unit(const Section& s, Ring ring);

    MeasurementSet domain() const { return domain_; }
    Ring ring() const { return ring_; }
    const std::map<Section, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coefficient(const Section& s) const;
    /// Adds c·s. Throws DomainError if s does not have this combination's domain.
    void add(const Section& s, const Integer& c);

    LinearCombination& operator+=(const LinearCombination& o);
    LinearCombination& operator-=(const LinearCombination& o);
    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
    friend LinearCombination operator*(const Integer& k, const LinearCombination& a);

    friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

private:
    MeasurementSet domain_;
    Ring ring_;
    std::map<Section, Integer> terms_;
};

/// A map between finite sets of sections, given by its graph.
using SectionMap = std::map<Section, Section>;

/// F_R(f)(φ) = [y ↦ Σ_{f(x)=y} φ(x)]. Every key of φ must lie in the domain of f
/// (DomainError otherwise); `codomain` is the domain of the target sections.
LinearCombination push_forward(const SectionMap& f, MeasurementSet codomain, const LinearCombination& phi);

/// r|U, the push-forward along section restriction. Requires U ⊆ domain(r).
LinearCombination restrict_combination(const LinearCombination& r, MeasurementSet target);

Integer coefficient_sum(const LinearCombination& r);

/// An element of C^q(U, F_R S_e): one combination over |σ| per q-simplex σ.
struct Cochain {
    std::size_t degree = 0;
    std::vector<LinearCombination> values;

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// The Čech cochain complex of F_R S_e over the nerve of the cover, with the
/// canonical basis S_e(|σ|) of each factor F(|σ|).
class CochainComplex {
public:
    /// Requires a restriction-consistent support (ValidationError otherwise).
    CochainComplex(const SupportModel& model, Ring ring, std::size_t max_degree = 2);

    const SupportModel& model() const { return model_; }
    Ring ring() const { return ring_; }
    std::size_t max_degree() const { return nerve_.size() - 1; }

    const std::vector<Simplex>& simplices(std::size_t q) const { return nerve_.at(q); }
    /// S_e(|σ|) for the i-th q-simplex, canonically sorted.
    const std::vector<Section>& basis(std::size_t q, std::size_t i) const { return bases_.at(q).at(i); }
    std::size_t dimension(std::size_t q) const;
    std::optional<std::size_t> simplex_index(std::size_t q, const std::vector<ContextIndex>& vertices) const;

    Cochain zero(std::size_t q) const;
    /// The 0-cochain (r_i) of a family indexed by context.
    Cochain family_cochain(std::vector<LinearCombination> family) const;

    std::vector<Integer> to_vector(const Cochain& w) const;
    Cochain from_vector(std::size_t q, const std::vector<Integer>& coords) const;

    /// δ^q(ω)(σ) = Σ_j (−1)^j ω(∂_jσ)||σ|. Requires q + 1 ≤ max_degree.
    Cochain coboundary(const Cochain& w) const;

    /// Matrix of δ^q in the canonical bases; entries in {−1, 0, 1}, not ring-reduced.
    IntMatrix coboundary_matrix(std::size_t q) const;

    bool is_cocycle(const Cochain& w) const;

    /// True iff ω(σ) restricts to 0 on |σ| ∩ C_base for every σ, i.e. ω is a
    /// cochain of the relative presheaf that vanishes on the base context.
    bool is_relative_to(const Cochain& w, ContextIndex base) const;

private:
    void check_degree(const Cochain& w) const;

    SupportModel model_;
    Ring ring_;
    std::vector<std::vector<Simplex>> nerve_;
    std::vector<std::vector<std::vector<Section>>> bases_;
    std::vector<std::map<std::vector<ContextIndex>, std::size_t>> index_;
    std::vector<std::vector<std::size_t>> offsets_;
};

Cochain coboundary(const CochainComplex& complex, const Cochain& w);
IntMatrix coboundary_matrix(const SupportModel& model, Ring ring, std::size_t q);

struct ObstructionOptions {
    /// Merge variables forced equal by a two-term constraint c = c' before
    /// solving. Verdicts do not depend on this flag.
    bool identify_variables = true;
};

/// The linear system whose solvability is equivalent to γ(t) = 0: one unknown
/// per support section of each non-base context, one row per (overlapping pair,
/// section of the overlap) with the base context's coefficients moved to the
/// right-hand side.
struct ObstructionSystem {
    IntMatrix matrix;
    std::vector<Integer> rhs;
    std::vector<std::pair<ContextIndex, Section>> variables;
    std::size_t reduced_variables = 0;  // unknowns actually solved for
};

struct ObstructionResult {
    Ring ring = Ring::integers;
    ContextIndex base_context = 0;
    Section base_section;
    bool vanishes = false;
    /// Compatible family {r_i}, one per context in cover order, with r_base = 1·t.
    std::vector<LinearCombination> witness;
    /// Set when the obstruction does not vanish; proves `system` unsolvable.
    std::optional<Certificate> certificate;
    ObstructionSystem system;
};

ObstructionSystem build_obstruction_system(const SupportModel& model, ContextIndex base, const Section& t);

/// Decides γ(t) = 0 over the ring. Throws DomainError if t ∉ supp(C_base),
/// ValidationError if the support is not restriction-consistent, and
/// VerificationError if a witness or certificate fails its re-check.
ObstructionResult obstruction(const SupportModel& model, ContextIndex base, const Section& t, Ring ring,
                              ObstructionOptions options = {});

/// One result per support section, contexts in cover order, sections canonical.
std::vector<ObstructionResult> all_obstructions(const SupportModel& model, Ring ring, ObstructionOptions options = {});

/// Checks r_base = 1·t, every term in the relevant support, and pairwise
/// equality of restrictions to overlaps, using restrict_combination only.
bool verify_witness(const SupportModel& model, ContextIndex base, const Section& t,
                    const std::vector<LinearCombination>& family, Ring ring);

}  // namespace cechctx
