#include "longwalk/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Implicit-shift QL on the tridiagonal (d, e) where e[i] couples i and i+1 and
// e[n-1] = 0 on entry. Rotations are accumulated into the columns of v.
// Convergence is tested against the running norm (tst1), which gives
// eigenvalues to absolute accuracy ~ eps * ||T||.
void ql_implicit(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd& v) {
    const Eigen::Index n = d.size();
    const Eigen::Index rows = v.rows();
    const int max_iter = 60;

    double shift_total = 0.0;
    double tst1 = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        Eigen::Index m = l;
        while (m < n - 1 && std::abs(e[m]) > kEps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter) {
                    std::ostringstream os;
                    os << "QL iteration did not converge at index " << l;
                    fail(ErrorKind::Numerical, os.str());
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (Eigen::Index i = l + 2; i < n; ++i) d[i] -= h;
                shift_total += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (Eigen::Index i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    double* vi = v.col(i).data();
                    double* vi1 = v.col(i + 1).data();
                    for (Eigen::Index k = 0; k < rows; ++k) {
                        const double t = vi1[k];
                        vi1[k] = s * vi[k] + c * t;
                        vi[k] = c * vi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > kEps * tst1);
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
}

SymmetricEigenDecomposition sorted(Eigen::VectorXd d, Eigen::MatrixXd v) {
    const Eigen::Index n = d.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });
    SymmetricEigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(v.rows(), n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[static_cast<std::size_t>(j)]];
        out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
    }
    return out;
}

// Householder reduction of the symmetric matrix held in v to tridiagonal form.
// On return v holds the accumulated orthogonal transform, d the diagonal and
// e the off-diagonal in the ql_implicit convention.
void householder_tridiagonalize(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e) {
    const Eigen::Index n = v.rows();
    d.resize(n);
    e.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (Eigen::Index i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (Eigen::Index j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (Eigen::Index k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (Eigen::Index j = 0; j < i; ++j) e[j] = 0.0;

            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                const double* vj = v.col(j).data();
                for (Eigen::Index k = j + 1; k <= i - 1; ++k) {
                    g += vj[k] * d[k];
                    e[k] += vj[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (Eigen::Index j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (Eigen::Index j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                double* vj = v.col(j).data();
                for (Eigen::Index k = j; k <= i - 1; ++k) vj[k] -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (Eigen::Index i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (Eigen::Index k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (Eigen::Index j = 0; j <= i; ++j) {
                double g = 0.0;
                for (Eigen::Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                double* vj = v.col(j).data();
                for (Eigen::Index k = 0; k <= i; ++k) vj[k] -= g * d[k];
            }
        }
        for (Eigen::Index k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;

    // e[i] coupled (i-1, i); shift to (i, i+1).
    for (Eigen::Index i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
}

}  // namespace

SymmetricEigenDecomposition eigh_tridiagonal(std::span<const double> diagonal,
                                             std::span<const double> offdiagonal) {
    const std::size_t n = diagonal.size();
    require(n > 0, ErrorKind::InvalidArgument, "eigh_tridiagonal: empty matrix");
    require(offdiagonal.size() + 1 == n, ErrorKind::InvalidArgument,
            "eigh_tridiagonal: offdiagonal length must be diagonal length - 1");
    for (double x : diagonal)
        require(std::isfinite(x), ErrorKind::InvalidArgument, "eigh_tridiagonal: non-finite diagonal");
    for (double x : offdiagonal)
        require(std::isfinite(x), ErrorKind::InvalidArgument,
                "eigh_tridiagonal: non-finite offdiagonal");

    const auto size = static_cast<Eigen::Index>(n);
    Eigen::VectorXd d(size);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(size);
    for (Eigen::Index i = 0; i < size; ++i) d[i] = diagonal[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < size; ++i) e[i] = offdiagonal[static_cast<std::size_t>(i)];
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(size, size);
    ql_implicit(d, e, v);
    return sorted(std::move(d), std::move(v));
}

SymmetricEigenDecomposition eigh_dense(const Eigen::MatrixXd& matrix) {
    const Eigen::Index n = matrix.rows();
    require(n > 0 && matrix.cols() == n, ErrorKind::InvalidArgument, "eigh_dense: matrix must be square");
    require(n <= kDenseDimensionCap, ErrorKind::InvalidArgument, "eigh_dense: dimension exceeds 4096");
    require(matrix.allFinite(), ErrorKind::InvalidArgument, "eigh_dense: non-finite entry");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    require(asym <= 1e-12 * scale, ErrorKind::InvalidArgument, "eigh_dense: matrix is not symmetric");

    if (n == 1) {
        SymmetricEigenDecomposition out;
        out.eigenvalues = Eigen::VectorXd::Constant(1, matrix(0, 0));
        out.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
        return out;
    }
    // Work on the symmetrised lower triangle.
    Eigen::MatrixXd v = 0.5 * (matrix + matrix.transpose());
    Eigen::VectorXd d, e;
    householder_tridiagonalize(v, d, e);
    ql_implicit(d, e, v);
    return sorted(std::move(d), std::move(v));
}

}  // namespace longwalk::numkit
