#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cechctx {

using Integer = mpz_class;

enum class Ring { integers, mod2 };

/// "z" or "z2".
std::string_view to_string(Ring r);
std::optional<Ring> parse_ring(std::string_view s);

/// Canonical representative of `x` in the ring: unchanged over Z, {0,1} over GF(2).
Integer reduce(const Integer& x, Ring r);

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static IntMatrix identity(std::size_t n);

    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    IntMatrix operator*(const IntMatrix& rhs) const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Proof that A·x = b has no solution over the ring.
///
/// Over GF(2) the multipliers are 0/1 and select rows summing to 0 = 1.
/// Over Z they are rationals y with yᵀA integral and yᵀb not integral; no
/// integer x can then satisfy A·x = b since yᵀA·x would be an integer.
struct Certificate {
    Ring ring = Ring::integers;
    std::vector<mpq_class> multipliers;
    std::string reason;
};

struct LinearSolution {
    std::optional<std::vector<Integer>> solution;
    std::optional<Certificate> certificate;

    bool solvable() const { return solution.has_value(); }
};

/// Column-style Hermite form: A·U = H with U unimodular and H in column echelon
/// form (pivots positive, entries left of a pivot reduced modulo it).
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
    /// pivot_rows[k] is the row of the pivot in column k; the rank is its size.
    std::vector<std::size_t> pivot_rows;
};

HermiteForm hermite_column_form(const IntMatrix& a);

/// Decides A·x = b. Free variables are set to 0. Solutions and certificates
/// are re-checked by substitution before returning (VerificationError otherwise).
/// Throws DomainError on a dimension mismatch.
LinearSolution solve_linear(const IntMatrix& a, const std::vector<Integer>& b, Ring ring);

bool verify_solution(const IntMatrix& a, const std::vector<Integer>& x, const std::vector<Integer>& b, Ring ring);
bool verify_certificate(const IntMatrix& a, const std::vector<Integer>& b, const Certificate& cert);

}  // namespace cechctx
