#include "hhalg/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <utility>

namespace hhalg {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Field arithmetic over F_p on machine words.
struct ModP {
    using T = std::uint64_t;
    std::uint64_t p;

    T from(const Scalar& x) const {
        mpz_class r = x.get_num() % mpz_class(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        return r.get_ui();
    }
    Scalar to(T v) const { return Scalar(static_cast<unsigned long>(v)); }
    T add(T a, T b) const {
        T s = a + b;
        return s >= p ? s - p : s;
    }
    T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
    T mul(T a, T b) const { return static_cast<T>((static_cast<unsigned __int128>(a) * b) % p); }
    T inv(T a) const {
        T result = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    bool is_zero(T a) const { return a == 0; }
    T zero() const { return 0; }
    T one() const { return 1; }
};

struct Rat {
    using T = mpq_class;
    T from(const Scalar& x) const { return x; }
    Scalar to(const T& v) const { return v; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const { return 1 / a; }
    bool is_zero(const T& a) const { return sgn(a) == 0; }
    T zero() const { return 0; }
    T one() const { return 1; }
};

template <class F>
struct Echelon {
    std::vector<std::vector<typename F::T>> rows;
    std::vector<std::size_t> pivots;
};

// Reduced row echelon form of the given rows (consumed).
template <class F>
Echelon<F> rref(const F& f, std::vector<std::vector<typename F::T>> rows, std::size_t ncols) {
    Echelon<F> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && f.is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        auto inv = f.inv(rows[r][c]);
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] = f.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || f.is_zero(rows[i][c])) continue;
            auto factor = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (!f.is_zero(rows[r][j])) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

template <class F>
std::vector<std::vector<typename F::T>> to_rows(const F& f, const ExactMatrix& m, const Vector* extra = nullptr) {
    std::size_t ncols = m.cols() + (extra ? 1 : 0);
    std::vector<std::vector<typename F::T>> rows(m.rows(), std::vector<typename F::T>(ncols, f.zero()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) rows[i][j] = f.from(m(i, j));
        if (extra) rows[i][m.cols()] = f.from((*extra)[i]);
    }
    return rows;
}

template <class Fn>
decltype(auto) with_field(const GroundRing& g, Fn&& fn) {
    if (g.kind() == GroundRing::Kind::PrimeField)
        return fn(ModP{static_cast<std::uint64_t>(g.characteristic())});
    return fn(Rat{});
}

template <class F>
std::vector<Vector> field_kernel(const F& f, const ExactMatrix& m) {
    auto ech = rref(f, to_rows(f, m), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), Scalar(0));
        v[free] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
            auto e = ech.rows[i][free];
            if (!f.is_zero(e)) v[ech.pivots[i]] = f.to(f.sub(f.zero(), e));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::optional<Vector> field_solve(const F& f, const ExactMatrix& m, const Vector& b) {
    auto ech = rref(f, to_rows(f, m, &b), m.cols() + 1);
    Vector x(m.cols(), Scalar(0));
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        if (ech.pivots[i] == m.cols()) return std::nullopt;
        x[ech.pivots[i]] = f.to(ech.rows[i][m.cols()]);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Integer Smith normal form on mpz entries.

using IntMat = std::vector<std::vector<mpz_class>>;

IntMat to_int(const ExactMatrix& m) {
    IntMat a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num();
    return a;
}

IntMat int_identity(std::size_t n) {
    IntMat a(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

ExactMatrix from_int(const IntMat& a, std::size_t rows, std::size_t cols) {
    ExactMatrix m(GroundRing::integers(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (a[i][j] != 0) m.set(i, j, Scalar(a[i][j]));
    return m;
}

void row_axpy(IntMat& a, std::size_t dst, std::size_t src, const mpz_class& q) {
    // row dst -= q * row src
    for (std::size_t j = 0; j < a[dst].size(); ++j)
        if (a[src][j] != 0) a[dst][j] -= q * a[src][j];
}

void col_axpy(IntMat& a, std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : a)
        if (row[src] != 0) row[dst] -= q * row[src];
}

void col_swap(IntMat& a, std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
}

SmithForm integer_smith(const ExactMatrix& m, PivotStrategy strategy) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMat d = to_int(m), u = int_identity(rows), v = int_identity(cols);
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        bool first_pass = true;
        while (true) {
            // Pivot selection within the trailing block; FirstNonzero only
            // governs the initial choice, later passes shrink the pivot.
            const bool take_first = first_pass && strategy == PivotStrategy::FirstNonzero;
            first_pass = false;
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (d[i][j] == 0) continue;
                    if (pi == rows || (!take_first && mpz_cmpabs(d[i][j].get_mpz_t(), d[pi][pj].get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
                    if (take_first) goto found;
                }
        found:
            if (pi == rows) goto done;
            std::swap(d[t], d[pi]);
            std::swap(u[t], u[pi]);
            col_swap(d, t, pj);
            col_swap(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                row_axpy(d, i, t, q);
                row_axpy(u, i, t, q);
                if (d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                col_axpy(d, j, t, q);
                col_axpy(v, j, t, q);
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce d_t | every remaining entry.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d[i][j] != 0 && !mpz_divisible_p(d[i][j].get_mpz_t(), d[t][t].get_mpz_t())) {
                        row_axpy(d, t, i, -1);
                        row_axpy(u, t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d[t][t] < 0) {
            for (auto& x : d[t]) x = -x;
            for (auto& x : u[t]) x = -x;
        }
    }
done:
    SmithForm out;
    out.rank = t;
    out.U = from_int(u, rows, rows);
    out.D = from_int(d, rows, cols);
    out.V = from_int(v, cols, cols);
    return out;
}

SmithForm field_smith(const ExactMatrix& m) {
    const GroundRing& g = m.ground();
    const std::size_t rows = m.rows(), cols = m.cols();
    ExactMatrix d = m, u = ExactMatrix::identity(g, rows), v = ExactMatrix::identity(g, cols);
    auto swap_rows = [&](ExactMatrix& a, std::size_t x, std::size_t y) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar tmp = a(x, j);
            a.set(x, j, a(y, j));
            a.set(y, j, tmp);
        }
    };
    auto swap_cols = [&](ExactMatrix& a, std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Scalar tmp = a(i, x);
            a.set(i, x, a(i, y));
            a.set(i, y, tmp);
        }
    };
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows && pi == rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (sgn(d(i, j)) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        swap_rows(d, t, pi);
        swap_rows(u, t, pi);
        swap_cols(d, t, pj);
        swap_cols(v, t, pj);
        Scalar inv = g.inverse(d(t, t));
        for (std::size_t j = 0; j < cols; ++j) d.set(t, j, d(t, j) * inv);
        for (std::size_t j = 0; j < rows; ++j) u.set(t, j, u(t, j) * inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == t || sgn(d(i, t)) == 0) continue;
            Scalar q = d(i, t);
            for (std::size_t j = 0; j < cols; ++j) d.set(i, j, d(i, j) - q * d(t, j));
            for (std::size_t j = 0; j < rows; ++j) u.set(i, j, u(i, j) - q * u(t, j));
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (sgn(d(t, j)) == 0) continue;
            Scalar q = d(t, j);
            d.set(t, j, Scalar(0));
            for (std::size_t i = 0; i < cols; ++i) v.set(i, j, v(i, j) - q * v(i, t));
        }
    }
    SmithForm out;
    out.rank = t;
    out.U = std::move(u);
    out.D = std::move(d);
    out.V = std::move(v);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

GroundRing GroundRing::prime_field(long p) {
    if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1L << 31)) throw UnsupportedGround("prime fields are limited to p < 2^31");
    return GroundRing(Kind::PrimeField, p);
}

GroundRing GroundRing::parse(std::string_view text) {
    if (text == "Z") return integers();
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        long p = 0;
        for (char c : text.substr(1)) {
            if (c < '0' || c > '9') throw InputError("bad ground ring '" + std::string(text) + "'");
            p = p * 10 + (c - '0');
            if (p > (1L << 31)) break;
        }
        return prime_field(p);
    }
    throw InputError("unknown ground ring '" + std::string(text) + "' (expected Z, Q or F<p>)");
}

std::string GroundRing::name() const {
    switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(p_);
    }
    return "?";
}

Scalar GroundRing::reduce(const Scalar& x) const {
    switch (kind_) {
    case Kind::Integers:
        if (x.get_den() != 1) throw InputError("non-integer scalar over Z");
        return x;
    case Kind::Rationals: {
        Scalar y = x;
        y.canonicalize();
        return y;
    }
    case Kind::PrimeField: {
        mpz_class p(static_cast<unsigned long>(p_));
        mpz_class num = x.get_num() % p;
        if (num < 0) num += p;
        if (x.get_den() != 1) {
            mpz_class den = x.get_den() % p, inv;
            if (den == 0 || mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
                throw InputError("denominator not invertible in " + name());
            num = (num * inv) % p;
        }
        return Scalar(num);
    }
    }
    return x;
}

bool GroundRing::is_unit(const Scalar& x) const {
    if (kind_ == Kind::Integers) return abs(x) == 1;
    return sgn(reduce(x)) != 0;
}

Scalar GroundRing::inverse(const Scalar& x) const {
    if (!is_unit(x)) throw InputError("scalar is not a unit in " + name());
    if (kind_ == Kind::Integers) return x;
    if (kind_ == Kind::Rationals) return 1 / x;
    ModP f{static_cast<std::uint64_t>(p_)};
    return f.to(f.inv(f.from(reduce(x))));
}

ExactMatrix::ExactMatrix(GroundRing ground, std::size_t rows, std::size_t cols)
    : ground_(ground), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

ExactMatrix ExactMatrix::identity(GroundRing ground, std::size_t n) {
    ExactMatrix m(ground, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

ExactMatrix ExactMatrix::from_rows(GroundRing ground, const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(ground, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(rows[i][j]));
    }
    return m;
}

ExactMatrix ExactMatrix::from_columns(GroundRing ground, std::size_t rows, const std::vector<Vector>& cols) {
    ExactMatrix m(ground, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw InputError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            if (sgn(cols[j][i]) != 0) m.set(i, j, cols[j][i]);
    }
    return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
    data_[i * cols_ + j] = ground_.reduce(value);
}

void ExactMatrix::add_to(std::size_t i, std::size_t j, const Scalar& value) {
    if (sgn(value) == 0) return;
    auto& slot = data_[i * cols_ + j];
    slot = ground_.reduce(slot + value);
}

Vector ExactMatrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector ExactMatrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector ExactMatrix::apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw InputError("dimension mismatch in matrix-vector product");
    Vector y(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(x[j]) != 0 && sgn((*this)(i, j)) != 0) acc += (*this)(i, j) * x[j];
        y[i] = ground_.reduce(acc);
    }
    return y;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
    if (cols_ != other.rows_) throw InputError("dimension mismatch in matrix product");
    if (!(ground_ == other.ground_)) throw InputError("ground ring mismatch in matrix product");
    ExactMatrix out(ground_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (sgn(other(k, j)) != 0) out.data_[i * other.cols_ + j] += a * other(k, j);
        }
    for (auto& x : out.data_) x = ground_.reduce(x);
    return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("dimension mismatch in matrix sum");
    if (!(ground_ == other.ground_)) throw InputError("ground ring mismatch in matrix sum");
    ExactMatrix out(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ground_.reduce(data_[k] + other.data_[k]);
    return out;
}

ExactMatrix ExactMatrix::operator*(const Scalar& c) const {
    ExactMatrix out(*this);
    for (auto& x : out.data_) x = ground_.reduce(x * c);
    return out;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(ground_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

std::string ExactMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.ground_ == b.ground_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Scalar> SmithForm::diagonal() const {
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
}

std::string SubquotientPresentation::torsion_string() const {
    std::string s;
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + torsion[i].get_str();
    return s;
}

std::string SubquotientPresentation::to_string() const {
    std::string s;
    if (free_rank > 0) s = "free^" + std::to_string(free_rank);
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.get_str());
    return s.empty() ? "0" : s;
}

SmithForm smith_normal_form(const ExactMatrix& m, PivotStrategy strategy) {
    if (m.ground().kind() == GroundRing::Kind::Integers) return integer_smith(m, strategy);
    return field_smith(m);
}

std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    GroundRing g = m.ground().kind() == GroundRing::Kind::Integers ? GroundRing::rationals() : m.ground();
    return with_field(g, [&](const auto& f) { return rref(f, to_rows(f, m), m.cols()).pivots.size(); });
}

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
    if (m.ground().is_field()) return with_field(m.ground(), [&](const auto& f) { return field_kernel(f, m); });
    SmithForm s = integer_smith(m, PivotStrategy::MinimalAbsolute);
    std::vector<Vector> basis;
    for (std::size_t j = s.rank; j < m.cols(); ++j) basis.push_back(s.V.column(j));
    return basis;
}

SubquotientPresentation cokernel(const ExactMatrix& m, PivotStrategy strategy) {
    SubquotientPresentation out;
    if (m.ground().is_field()) {
        out.free_rank = m.rows() - rank(m);
        return out;
    }
    SmithForm s = smith_normal_form(m, strategy);
    out.free_rank = m.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i) {
        mpz_class d = abs(s.D(i, i).get_num());
        if (d != 1) out.torsion.push_back(d);
    }
    return out;
}

std::optional<Vector> solve(const ExactMatrix& m, std::span<const Scalar> b) {
    if (b.size() != m.rows()) throw InputError("dimension mismatch in solve");
    Vector rhs(b.begin(), b.end());
    for (auto& x : rhs) x = m.ground().reduce(x);
    if (m.ground().is_field())
        return with_field(m.ground(), [&](const auto& f) { return field_solve(f, m, rhs); });
    SmithForm s = integer_smith(m, PivotStrategy::MinimalAbsolute);
    Vector ub = s.U.apply(rhs);
    Vector y(m.cols(), Scalar(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i < s.rank) {
            mpz_class d = s.D(i, i).get_num(), num = ub[i].get_num();
            if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            y[i] = Scalar(num / d);
        } else if (sgn(ub[i]) != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

std::optional<ExactMatrix> coordinates_in(const ExactMatrix& basis, const ExactMatrix& targets) {
    const GroundRing& g = basis.ground();
    ExactMatrix coords(g, basis.cols(), targets.cols());
    if (basis.cols() == 0) {
        if (!targets.is_zero()) return std::nullopt;
        return coords;
    }
    if (g.is_field()) {
        for (std::size_t j = 0; j < targets.cols(); ++j) {
            auto x = solve(basis, targets.column(j));
            if (!x) return std::nullopt;
            for (std::size_t i = 0; i < x->size(); ++i) coords.set(i, j, (*x)[i]);
        }
        return coords;
    }
    // One Smith form shared by all right-hand sides.
    SmithForm s = integer_smith(basis, PivotStrategy::MinimalAbsolute);
    if (s.rank != basis.cols()) throw InputError("coordinates_in: basis columns are dependent");
    for (std::size_t j = 0; j < targets.cols(); ++j) {
        Vector ub = s.U.apply(targets.column(j));
        Vector y(basis.cols(), Scalar(0));
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            if (i < s.rank) {
                mpz_class d = s.D(i, i).get_num(), num = ub[i].get_num();
                if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
                y[i] = Scalar(num / d);
            } else if (sgn(ub[i]) != 0) {
                return std::nullopt;
            }
        }
        Vector x = s.V.apply(y);
        for (std::size_t i = 0; i < x.size(); ++i) coords.set(i, j, x[i]);
    }
    return coords;
}

SubquotientPresentation homology_at(const ExactMatrix& outgoing, const ExactMatrix& incoming) {
    const GroundRing& g = outgoing.ground();
    std::size_t n = outgoing.cols();
    if (incoming.rows() != n) throw InputError("homology_at: incompatible differentials");
    if (g.is_field()) {
        SubquotientPresentation out;
        out.free_rank = n - rank(outgoing) - rank(incoming);
        return out;
    }
    auto kernel = kernel_basis(outgoing);
    ExactMatrix k = ExactMatrix::from_columns(g, n, kernel);
    auto coords = coordinates_in(k, incoming);
    if (!coords) throw InvariantViolation("homology_at: image is not contained in the kernel");
    return cokernel(*coords);
}

Subspace::Subspace(GroundRing ground, std::size_t ambient) : ground_(ground), ambient_(ambient) {
    if (!ground.is_field()) throw UnsupportedGround("Subspace requires a field ground");
}

namespace {

template <class F>
void reduce_row(const F& f, std::vector<typename F::T>& w, const std::vector<std::vector<typename F::T>>& rows,
                const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto c = w[pivots[i]];
        if (f.is_zero(c)) continue;
        for (std::size_t j = pivots[i]; j < w.size(); ++j)
            if (!f.is_zero(rows[i][j])) w[j] = f.sub(w[j], f.mul(c, rows[i][j]));
    }
}

template <class F>
bool insert_row(const F& f, std::vector<typename F::T> w, std::vector<std::vector<typename F::T>>& rows,
                std::vector<std::size_t>& pivots) {
    reduce_row(f, w, rows, pivots);
    std::size_t p = 0;
    while (p < w.size() && f.is_zero(w[p])) ++p;
    if (p == w.size()) return false;
    auto inv = f.inv(w[p]);
    for (std::size_t j = p; j < w.size(); ++j) w[j] = f.mul(w[j], inv);
    // Keep the rows fully reduced.
    for (auto& row : rows) {
        auto c = row[p];
        if (f.is_zero(c)) continue;
        for (std::size_t j = p; j < w.size(); ++j)
            if (!f.is_zero(w[j])) row[j] = f.sub(row[j], f.mul(c, w[j]));
    }
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), p) - pivots.begin();
    pivots.insert(pivots.begin() + pos, p);
    rows.insert(rows.begin() + pos, std::move(w));
    return true;
}

} // namespace

bool Subspace::contains(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw InputError("Subspace::contains: dimension mismatch");
    if (ground_.kind() == GroundRing::Kind::PrimeField) {
        ModP f{static_cast<std::uint64_t>(ground_.characteristic())};
        std::vector<std::uint64_t> w(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j) w[j] = f.from(ground_.reduce(v[j]));
        reduce_row(f, w, words_, pivots_);
        return std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; });
    }
    Vector w(v.begin(), v.end());
    reduce_row(Rat{}, w, rows_, pivots_);
    return std::all_of(w.begin(), w.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Subspace::insert(std::span<const Scalar> v) {
    if (v.size() != ambient_) throw InputError("Subspace::insert: dimension mismatch");
    if (ground_.kind() == GroundRing::Kind::PrimeField) {
        ModP f{static_cast<std::uint64_t>(ground_.characteristic())};
        std::vector<std::uint64_t> w(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j) w[j] = f.from(ground_.reduce(v[j]));
        return insert_row(f, std::move(w), words_, pivots_);
    }
    return insert_row(Rat{}, Vector(v.begin(), v.end()), rows_, pivots_);
}

Vector Subspace::reduce(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw InputError("Subspace::reduce: dimension mismatch");
    if (ground_.kind() == GroundRing::Kind::PrimeField) {
        ModP f{static_cast<std::uint64_t>(ground_.characteristic())};
        std::vector<std::uint64_t> w(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j) w[j] = f.from(ground_.reduce(v[j]));
        reduce_row(f, w, words_, pivots_);
        Vector out(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j) out[j] = Scalar(static_cast<unsigned long>(w[j]));
        return out;
    }
    Vector w(v.begin(), v.end());
    reduce_row(Rat{}, w, rows_, pivots_);
    return w;
}

std::vector<Vector> Subspace::basis() const {
    if (ground_.kind() != GroundRing::Kind::PrimeField) return rows_;
    std::vector<Vector> out;
    for (const auto& w : words_) {
        Vector v(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j) v[j] = Scalar(static_cast<unsigned long>(w[j]));
        out.push_back(std::move(v));
    }
    return out;
}

mpz_class determinant_integer(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
    if (m.ground().kind() != GroundRing::Kind::Integers) throw UnsupportedGround("determinant_integer expects Z");
    // Bareiss fraction-free elimination.
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMat a = to_int(m);
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

} // namespace hhalg
