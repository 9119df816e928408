#pragma once

#include "robin/lattice.hpp"
#include "robin/potential.hpp"

namespace robin {

/// N x N top-left corner of the half-line operator: given diagonal entries
/// and a constant off-diagonal (1 for plain truncations, -1 after the duality
/// transform).
class TridiagonalMatrix {
public:
    TridiagonalMatrix(std::vector<Complex> diagonal, Complex off_diagonal = 1.0);

    int size() const { return static_cast<int>(diag_.size()); }
    const std::vector<Complex>& diagonal() const { return diag_; }
    Complex off_diagonal() const { return off_; }

    Complex diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }

    bool is_real() const;

    /// y = M x.
    ComplexSeq apply(const ComplexSeq& x) const;

    /// <u, M u> = u^dagger M u.
    Complex quadratic_form(const ComplexSeq& u) const;

private:
    std::vector<Complex> diag_;
    Complex off_;
};

/// Finite section of the coupled operator plus potential: diagonal
/// (a + v_1, v_2, ..., v_N), off-diagonals 1.  Throws SizeError for N < 2.
TridiagonalMatrix build_truncation(const RobinCoupling& a, const Potential& v, int n);

/// Conjugation by diag(1,-1,1,-1,...): diagonal unchanged, off-diagonals
/// negated.  On truncations this realizes the sign-flip duality between the
/// couplings a and -a.
TridiagonalMatrix duality_transform(const TridiagonalMatrix& m);

/// Solves (M - shift) x = rhs by the Thomas recursion without pivoting.
/// Caller must ensure diagonal dominance (|diag - shift| > 2|off|), as for
/// real shifts beyond the numerical range; throws DomainError otherwise.
ComplexSeq solve_shifted_dominant(const TridiagonalMatrix& m, Complex shift, const ComplexSeq& rhs);

} // namespace robin
