#pragma once

// Exact linear algebra over Z, F_p and Q.
//
// Scalars are stored as GMP rationals; the ground ring decides which values
// are legal (integers for Z, residues in [0, p) for F_p) and how division
// behaves. Integer matrices are diagonalised by Smith normal form, field
// matrices by Gaussian elimination with a word-sized fast path for F_p.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhalg/errors.hpp"

namespace hhalg {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

class GroundRing {
public:
    enum class Kind { Integers, PrimeField, Rationals };

    static GroundRing integers() { return GroundRing(Kind::Integers, 0); }
    static GroundRing rationals() { return GroundRing(Kind::Rationals, 0); }
    static GroundRing prime_field(long p);
    // Accepts "Z", "Q", "F<p>" (e.g. "F2", "F5").
    static GroundRing parse(std::string_view text);

    Kind kind() const { return kind_; }
    long characteristic() const { return p_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    std::string name() const;

    // Canonical representative; throws InputError for non-integers over Z.
    Scalar reduce(const Scalar& x) const;
    Scalar from_int(long x) const { return reduce(Scalar(x)); }
    bool is_unit(const Scalar& x) const;
    Scalar inverse(const Scalar& x) const;

    friend bool operator==(const GroundRing&, const GroundRing&) = default;

private:
    GroundRing(Kind k, long p) : kind_(k), p_(p) {}
    Kind kind_;
    long p_;
};

class ExactMatrix {
public:
    ExactMatrix() : ground_(GroundRing::integers()) {}
    ExactMatrix(GroundRing ground, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(GroundRing ground, std::size_t n);
    static ExactMatrix from_rows(GroundRing ground, const std::vector<std::vector<long>>& rows);
    // Columns given as vectors of equal length `rows`.
    static ExactMatrix from_columns(GroundRing ground, std::size_t rows, const std::vector<Vector>& cols);

    const GroundRing& ground() const { return ground_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Scalar& value);
    void add_to(std::size_t i, std::size_t j, const Scalar& value);

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    Vector apply(std::span<const Scalar> x) const;
    ExactMatrix operator*(const ExactMatrix& other) const;
    ExactMatrix operator+(const ExactMatrix& other) const;
    ExactMatrix operator*(const Scalar& c) const;
    ExactMatrix transpose() const;
    bool is_zero() const;
    std::string to_string() const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

private:
    GroundRing ground_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

enum class PivotStrategy { MinimalAbsolute, FirstNonzero };

struct SmithForm {
    ExactMatrix U, D, V;
    std::size_t rank = 0;

    // Diagonal entries d_0, ..., d_{min(m,n)-1}.
    std::vector<Scalar> diagonal() const;
};

// Free rank plus invariant factors > 1 (always empty over a field).
struct SubquotientPresentation {
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    // Cardinality when finite (free_rank == 0) over Z; q^free_rank over F_q.
    std::string to_string() const;
    std::string torsion_string() const;

    friend bool operator==(const SubquotientPresentation&, const SubquotientPresentation&) = default;
};

SmithForm smith_normal_form(const ExactMatrix& m, PivotStrategy strategy = PivotStrategy::MinimalAbsolute);

std::size_t rank(const ExactMatrix& m);

// Independent generating set of {v : Mv = 0}; a lattice basis over Z.
std::vector<Vector> kernel_basis(const ExactMatrix& m);

SubquotientPresentation cokernel(const ExactMatrix& m,
                                 PivotStrategy strategy = PivotStrategy::MinimalAbsolute);

std::optional<Vector> solve(const ExactMatrix& m, std::span<const Scalar> b);

// ker(outgoing) / im(incoming) where incoming : C_{n+1} -> C_n and outgoing : C_n -> C_{n-1}.
SubquotientPresentation homology_at(const ExactMatrix& outgoing, const ExactMatrix& incoming);

// Coordinates of each column of `targets` in the basis given by the columns of
// `basis` (which must have independent columns spanning a saturated lattice
// over Z). Returns nullopt if some column is outside the span.
std::optional<ExactMatrix> coordinates_in(const ExactMatrix& basis, const ExactMatrix& targets);

// Incrementally maintained subspace of F^n over a field ground, kept in
// reduced echelon form. Insertion order determines which vectors become pivots.
class Subspace {
public:
    Subspace(GroundRing ground, std::size_t ambient);

    std::size_t dimension() const { return pivots_.size(); }
    std::size_t ambient() const { return ambient_; }
    bool contains(std::span<const Scalar> v) const;
    // Adds v; returns true when the dimension grew.
    bool insert(std::span<const Scalar> v);
    std::vector<Vector> basis() const;
    // Residue of v modulo the subspace; it vanishes at every pivot coordinate.
    Vector reduce(std::span<const Scalar> v) const;
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    GroundRing ground_;
    std::size_t ambient_;
    std::vector<std::size_t> pivots_;
    std::vector<Vector> rows_;                     // over Q
    std::vector<std::vector<std::uint64_t>> words_; // over F_p
};

mpz_class determinant_integer(const ExactMatrix& m);

} // namespace hhalg
