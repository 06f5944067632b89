#include "cechctx/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "cechctx/errors.hpp"

namespace cechctx {

std::string_view to_string(Ring r) { return r == Ring::integers ? "z" : "z2"; }

std::optional<Ring> parse_ring(std::string_view s) {
    if (s == "z") return Ring::integers;
    if (s == "z2") return Ring::mod2;
    return std::nullopt;
}

Integer reduce(const Integer& x, Ring r) {
    if (r == Ring::integers) return x;
    return Integer(mpz_odd_p(x.get_mpz_t()) ? 1 : 0);
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
    if (x.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
    std::vector<Integer> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * x[c];
        }
    }
    return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DomainError("matrix product dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            if (sgn((*this)(r, k)) == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += (*this)(r, k) * rhs(k, c);
        }
    }
    return out;
}

namespace {

void check_dimensions(const IntMatrix& a, const std::vector<Integer>& b) {
    if (a.rows() != b.size()) throw DomainError("right-hand side length does not match the matrix row count");
}

// ---------------------------------------------------------------------------
// GF(2)

class BitRow {
public:
    explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    BitRow& operator^=(const BitRow& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }

    std::optional<std::size_t> first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        }
        return std::nullopt;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Gf2Row {
    BitRow coeffs;
    bool rhs;
    BitRow origin;  // which input rows were summed into this one
};

LinearSolution solve_mod2(const IntMatrix& a, const std::vector<Integer>& b) {
    const auto m = a.rows();
    const auto n = a.cols();
    std::vector<Gf2Row> rows;
    rows.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
        Gf2Row row{BitRow(n), mpz_odd_p(b[r].get_mpz_t()) != 0, BitRow(m)};
        for (std::size_t c = 0; c < n; ++c) {
            if (mpz_odd_p(a(r, c).get_mpz_t())) row.coeffs.set(c);
        }
        row.origin.set(r);
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t p = rank;
        while (p < m && !rows[p].coeffs.get(c)) ++p;
        if (p == m) continue;
        std::swap(rows[rank], rows[p]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != rank && rows[r].coeffs.get(c)) {
                rows[r].coeffs ^= rows[rank].coeffs;
                rows[r].rhs ^= rows[rank].rhs;
                rows[r].origin ^= rows[rank].origin;
            }
        }
        pivot_col.push_back(c);
        ++rank;
    }

    for (std::size_t r = rank; r < m; ++r) {
        if (!rows[r].rhs) continue;
        Certificate cert{Ring::mod2, std::vector<mpq_class>(m), "rows sum to 0 = 1 over GF(2)"};
        for (std::size_t i = 0; i < m; ++i) cert.multipliers[i] = rows[r].origin.get(i) ? 1 : 0;
        return {std::nullopt, std::move(cert)};
    }

    std::vector<Integer> x(n, 0);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rows[r].rhs ? 1 : 0;
    return {std::move(x), std::nullopt};
}

// ---------------------------------------------------------------------------
// Z

void column_axpy(IntMatrix& m, std::size_t dst, const Integer& q, std::size_t src) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (sgn(m(r, src)) != 0) m(r, dst) -= q * m(r, src);
    }
}

void column_swap(IntMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows(); ++r) swap(m(r, i), m(r, j));
}

void column_negate(IntMatrix& m, std::size_t i) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) = -m(r, i);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// w with Σ_a w_a·H[rows[a]][l] = target_l for l < rows.size(); H restricted to
// those rows and the first rows.size() columns is lower triangular.
std::vector<mpq_class> left_triangular_solve(const IntMatrix& h, const std::vector<std::size_t>& rows,
                                             const std::vector<mpq_class>& target) {
    const auto k = rows.size();
    std::vector<mpq_class> w(k);
    for (std::size_t l = k; l-- > 0;) {
        mpq_class acc = target[l];
        for (std::size_t a = l + 1; a < k; ++a) acc -= w[a] * mpq_class(h(rows[a], l));
        w[l] = acc / mpq_class(h(rows[l], l));
    }
    return w;
}

LinearSolution solve_integers(const IntMatrix& a, const std::vector<Integer>& b) {
    const auto m = a.rows();
    const auto n = a.cols();
    auto hf = hermite_column_form(a);
    const auto& h = hf.h;
    const auto rank = hf.pivot_rows.size();

    std::vector<Integer> y(n, 0);
    std::size_t k = 0;  // pivots whose row is < the current row
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_pivot = k < rank && hf.pivot_rows[k] == i;
        Integer residual = b[i];
        for (std::size_t l = 0; l < k; ++l) residual -= h(i, l) * y[l];
        if (is_pivot) {
            if (mpz_divisible_p(residual.get_mpz_t(), h(i, k).get_mpz_t())) {
                mpz_divexact(y[k].get_mpz_t(), residual.get_mpz_t(), h(i, k).get_mpz_t());
                ++k;
                continue;
            }
            // y_k would be residual / pivot, not an integer. The functional
            // extracting y_k from b is integral on the lattice spanned by A.
            std::vector<std::size_t> rows(hf.pivot_rows.begin(), hf.pivot_rows.begin() + static_cast<long>(k) + 1);
            std::vector<mpq_class> target(k + 1, 0);
            target[k] = 1;
            auto w = left_triangular_solve(h, rows, target);
            Certificate cert{Ring::integers, std::vector<mpq_class>(m, 0),
                             "pivot " + h(i, k).get_str() + " does not divide " + residual.get_str() + " (row " +
                                 std::to_string(i) + ")"};
            for (std::size_t t = 0; t < rows.size(); ++t) cert.multipliers[rows[t]] = w[t];
            return {std::nullopt, std::move(cert)};
        }
        if (sgn(residual) == 0) continue;
        // Row i is a rational combination of earlier pivot rows but b disagrees.
        std::vector<std::size_t> rows(hf.pivot_rows.begin(), hf.pivot_rows.begin() + static_cast<long>(k));
        std::vector<mpq_class> target(k);
        for (std::size_t l = 0; l < k; ++l) target[l] = -mpq_class(h(i, l));
        auto w = left_triangular_solve(h, rows, target);
        const mpq_class scale = mpq_class(1) / (mpq_class(2) * mpq_class(residual));
        Certificate cert{Ring::integers, std::vector<mpq_class>(m, 0),
                         "row " + std::to_string(i) + " is inconsistent over Q"};
        cert.multipliers[i] = scale;
        for (std::size_t t = 0; t < rows.size(); ++t) cert.multipliers[rows[t]] = w[t] * scale;
        for (auto& q : cert.multipliers) q.canonicalize();
        return {std::nullopt, std::move(cert)};
    }

    return {hf.u.apply(y), std::nullopt};
}

}  // namespace

HermiteForm hermite_column_form(const IntMatrix& a) {
    HermiteForm out{a, IntMatrix::identity(a.cols()), {}};
    auto& h = out.h;
    auto& u = out.u;
    const auto m = a.rows();
    const auto n = a.cols();
    std::size_t k = 0;
    for (std::size_t i = 0; i < m && k < n; ++i) {
        while (true) {
            std::optional<std::size_t> best;
            std::size_t nonzero = 0;
            for (std::size_t j = k; j < n; ++j) {
                if (sgn(h(i, j)) == 0) continue;
                ++nonzero;
                if (!best || mpz_cmpabs(h(i, j).get_mpz_t(), h(i, *best).get_mpz_t()) < 0) best = j;
            }
            if (nonzero == 0) break;
            if (*best != k) {
                column_swap(h, *best, k);
                column_swap(u, *best, k);
            }
            if (nonzero == 1) break;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (sgn(h(i, j)) == 0) continue;
                auto q = floor_div(h(i, j), h(i, k));
                column_axpy(h, j, q, k);
                column_axpy(u, j, q, k);
            }
        }
        if (sgn(h(i, k)) == 0) continue;
        if (sgn(h(i, k)) < 0) {
            column_negate(h, k);
            column_negate(u, k);
        }
        for (std::size_t l = 0; l < k; ++l) {
            auto q = floor_div(h(i, l), h(i, k));
            if (sgn(q) == 0) continue;
            column_axpy(h, l, q, k);
            column_axpy(u, l, q, k);
        }
        out.pivot_rows.push_back(i);
        ++k;
    }
    return out;
}

bool verify_solution(const IntMatrix& a, const std::vector<Integer>& x, const std::vector<Integer>& b, Ring ring) {
    if (x.size() != a.cols() || b.size() != a.rows()) return false;
    auto ax = a.apply(x);
    for (std::size_t r = 0; r < ax.size(); ++r) {
        if (reduce(ax[r] - b[r], ring) != 0) return false;
    }
    return true;
}

bool verify_certificate(const IntMatrix& a, const std::vector<Integer>& b, const Certificate& cert) {
    if (cert.multipliers.size() != a.rows() || b.size() != a.rows()) return false;
    auto is_integral = [](const mpq_class& q) { return q.get_den() == 1; };
    for (std::size_t c = 0; c < a.cols(); ++c) {
        mpq_class acc = 0;
        for (std::size_t r = 0; r < a.rows(); ++r) acc += cert.multipliers[r] * mpq_class(a(r, c));
        acc.canonicalize();
        if (!is_integral(acc)) return false;
        if (cert.ring == Ring::mod2 && reduce(acc.get_num(), Ring::mod2) != 0) return false;
    }
    mpq_class rhs = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (cert.ring == Ring::mod2 && !is_integral(cert.multipliers[r])) return false;
        rhs += cert.multipliers[r] * mpq_class(b[r]);
    }
    rhs.canonicalize();
    if (cert.ring == Ring::mod2) return is_integral(rhs) && reduce(rhs.get_num(), Ring::mod2) == 1;
    return !is_integral(rhs);
}

LinearSolution solve_linear(const IntMatrix& a, const std::vector<Integer>& b, Ring ring) {
    check_dimensions(a, b);
    auto result = ring == Ring::mod2 ? solve_mod2(a, b) : solve_integers(a, b);
    if (result.solution && !verify_solution(a, *result.solution, b, ring)) {
        throw VerificationError("linear solver returned a solution that fails substitution");
    }
    if (result.certificate && !verify_certificate(a, b, *result.certificate)) {
        throw VerificationError("linear solver returned an invalid unsolvability certificate");
    }
    return result;
}

}  // namespace cechctx
