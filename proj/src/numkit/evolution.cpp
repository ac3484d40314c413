#include "longwalk/numkit.hpp"

#include <cmath>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk::numkit {

Eigen::VectorXcd evolve(const SymmetricEigenDecomposition& decomposition,
                        const Eigen::VectorXcd& initial, double time) {
    const Eigen::Index n = decomposition.size();
    require(initial.size() == n, ErrorKind::InvalidArgument, "evolve: dimension mismatch");
    require(std::isfinite(time), ErrorKind::InvalidArgument, "evolve: non-finite time");
    const double norm = initial.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "evolve: initial state not normalised (|psi| = " << norm << ")";
        fail(ErrorKind::InvalidArgument, os.str());
    }

    const Eigen::MatrixXd& v = decomposition.eigenvectors;
    Eigen::VectorXcd coeff(n);
    coeff.real() = v.transpose() * initial.real();
    coeff.imag() = v.transpose() * initial.imag();
    for (Eigen::Index k = 0; k < n; ++k)
        coeff[k] *= std::polar(1.0, -decomposition.eigenvalues[k] * time);
    Eigen::VectorXcd out(n);
    out.real() = v * coeff.real();
    out.imag() = v * coeff.imag();
    return out;
}

Eigen::VectorXcd evolve(const SymmetricEigenDecomposition& decomposition,
                        const Eigen::VectorXd& initial, double time) {
    return evolve(decomposition, Eigen::VectorXcd(initial.cast<Complex>()), time);
}

Eigen::VectorXcd evolve_krylov(const LinearOperator& apply, const Eigen::VectorXd& initial,
                               double time, int max_dimension, double breakdown_tol) {
    const Eigen::Index n = initial.size();
    require(n > 0, ErrorKind::InvalidArgument, "evolve_krylov: empty state");
    const double norm = initial.norm();
    require(std::abs(norm - 1.0) <= 1e-12, ErrorKind::InvalidArgument,
            "evolve_krylov: initial state not normalised");

    const int cap = static_cast<int>(std::min<Eigen::Index>(max_dimension, n));
    Eigen::MatrixXd basis(n, cap);
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = initial;
    Eigen::VectorXd w(n);
    double scale = 0.0;
    int dim = 0;
    bool closed = false;
    for (int j = 0; j < cap; ++j) {
        apply(basis.col(j), w);
        const double a = basis.col(j).dot(w);
        alpha.push_back(a);
        scale = std::max({scale, std::abs(a), w.norm()});
        // Two passes of classical Gram-Schmidt against the whole basis.
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd proj = basis.leftCols(j + 1).transpose() * w;
            w.noalias() -= basis.leftCols(j + 1) * proj;
        }
        dim = j + 1;
        const double b = w.norm();
        if (b <= breakdown_tol * std::max(scale, 1e-300) || dim == n) {
            closed = true;
            break;
        }
        if (j + 1 == cap) break;
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }
    if (!closed) {
        std::ostringstream os;
        os << "evolve_krylov: Krylov space did not close within " << cap << " vectors";
        fail(ErrorKind::Numerical, os.str());
    }

    const auto small = eigh_tridiagonal(std::span<const double>(alpha.data(), alpha.size()),
                                        std::span<const double>(beta.data(), dim - 1));
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
    e1[0] = 1.0;
    const Eigen::VectorXcd reduced = evolve(small, e1, time);
    Eigen::VectorXcd out(n);
    out.real() = basis.leftCols(dim) * reduced.real();
    out.imag() = basis.leftCols(dim) * reduced.imag();
    return out;
}

}  // namespace longwalk::numkit
