#include "robin/tridiagonal.hpp"

#include <cmath>

namespace robin {

TridiagonalMatrix::TridiagonalMatrix(std::vector<Complex> diagonal, Complex off_diagonal)
    : diag_(std::move(diagonal)), off_(off_diagonal)
{
    if (diag_.size() < 2) {
        throw SizeError("TridiagonalMatrix: need N >= 2");
    }
    for (const Complex& d : diag_) {
        require_finite(d, "TridiagonalMatrix diagonal");
    }
    require_finite(off_, "TridiagonalMatrix off-diagonal");
}

bool TridiagonalMatrix::is_real() const
{
    if (off_.imag() != 0.0) {
        return false;
    }
    for (const Complex& d : diag_) {
        if (d.imag() != 0.0) {
            return false;
        }
    }
    return true;
}

ComplexSeq TridiagonalMatrix::apply(const ComplexSeq& x) const
{
    const std::size_t n = diag_.size();
    if (x.size() != n) {
        throw SizeError("TridiagonalMatrix::apply: size mismatch");
    }
    ComplexSeq y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = diag_[i] * x[i];
        if (i > 0) {
            acc += off_ * x[i - 1];
        }
        if (i + 1 < n) {
            acc += off_ * x[i + 1];
        }
        y[i] = acc;
    }
    return y;
}

Complex TridiagonalMatrix::quadratic_form(const ComplexSeq& u) const
{
    const ComplexSeq mu = apply(u);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * mu[i];
    }
    return acc;
}

TridiagonalMatrix build_truncation(const RobinCoupling& a, const Potential& v, int n)
{
    if (n < 2) {
        throw SizeError("build_truncation: need N >= 2");
    }
    std::vector<Complex> diag(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    diag[0] = a.value() + v.value(1);
    for (const auto& [site, value] : v.entries()) {
        if (site >= 2 && site <= n) {
            diag[static_cast<std::size_t>(site - 1)] = value;
        }
    }
    return TridiagonalMatrix(std::move(diag), 1.0);
}

TridiagonalMatrix duality_transform(const TridiagonalMatrix& m)
{
    return TridiagonalMatrix(m.diagonal(), -m.off_diagonal());
}

ComplexSeq solve_shifted_dominant(const TridiagonalMatrix& m, Complex shift, const ComplexSeq& rhs)
{
    const std::size_t n = m.diagonal().size();
    if (rhs.size() != n) {
        throw SizeError("solve_shifted_dominant: size mismatch");
    }
    const double off_abs = std::abs(m.off_diagonal());
    for (const Complex& d : m.diagonal()) {
        if (std::abs(d - shift) <= 2.0 * off_abs) {
            throw DomainError("solve_shifted_dominant: matrix not diagonally dominant");
        }
    }
    ComplexSeq c(n), x(n);
    const Complex off = m.off_diagonal();
    Complex denom = m.diag(0) - shift;
    c[0] = off / denom;
    x[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = (m.diag(static_cast<int>(i)) - shift) - off * c[i - 1];
        c[i] = off / denom;
        x[i] = (rhs[i] - off * x[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

} // namespace robin
