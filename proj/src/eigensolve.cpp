#include "swanson/eigensolve.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swanson {

namespace {
constexpr double kHermitianTolerance = 1e-12;

std::string defect_message(double defect) {
  std::ostringstream os;
  os << "symmetric_eigensolve: matrix is not Hermitian (relative defect " << defect
     << "); diagonalize its Hermitian partner and map back with conjugate_by_diagonal";
  return os.str();
}
}  // namespace

NonHermitianInput::NonHermitianInput(double defect)
    : std::invalid_argument(defect_message(defect)), defect_(defect) {}

SpectralReport symmetric_eigensolve(const OperatorMatrix& m, std::size_t k) {
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTolerance) throw NonHermitianInput(defect);
  const std::size_t n = m.size();
  if (k == 0 || k > n) throw std::invalid_argument("symmetric_eigensolve: k must lie in [1, n]");

  std::vector<double> w(n);
  std::vector<complex> vecs;  // column-major n x found
  lapack_int found = 0;

  bool real_tridiagonal = std::max(m.lower(), m.upper()) <= 1;
  for (std::size_t i = 0; real_tridiagonal && i < n; ++i) {
    real_tridiagonal = m(i, i).imag() == 0.0 && (i + 1 == n || m(i, i + 1).imag() == 0.0);
  }

  if (real_tridiagonal) {
    // dstevx needs no n x n workspace, which matters on refined grids.
    std::vector<double> d(n), e(n > 1 ? n - 1 : 1);
    for (std::size_t i = 0; i < n; ++i) d[i] = m(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = 0.5 * (m(i, i + 1).real() + m(i + 1, i).real());
    std::vector<double> z(n * k);
    std::vector<lapack_int> ifail(n);
    const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(n), d.data(),
                                           e.data(), 0.0, 0.0, 1, static_cast<lapack_int>(k),
                                           2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(),
                                           static_cast<lapack_int>(n), ifail.data());
    if (info != 0) throw std::runtime_error("symmetric_eigensolve: dstevx failed with info " + std::to_string(info));
    vecs.assign(z.begin(), z.begin() + static_cast<long>(n * static_cast<std::size_t>(found)));
  } else {
    // Upper band storage, column-major: ab[(kd + i - j) + j*ldab] = A(i, j), i <= j.
    const std::size_t kd = std::max(m.lower(), m.upper());
    const std::size_t ldab = kd + 1;
    std::vector<lapack_complex_double> ab(ldab * n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i0 = j >= kd ? j - kd : 0;
      for (std::size_t i = i0; i <= j; ++i) {
        // average the triangles so roundoff-level asymmetry does not bias the result
        const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        ab[(kd + i - j) + j * ldab] = v;
      }
    }
    std::vector<lapack_complex_double> q(n * n);
    std::vector<lapack_complex_double> z(n * k);
    std::vector<lapack_int> ifail(n);
    const lapack_int info = LAPACKE_zhbevx(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', static_cast<lapack_int>(n), static_cast<lapack_int>(kd), ab.data(),
        static_cast<lapack_int>(ldab), q.data(), static_cast<lapack_int>(n), 0.0, 0.0, 1,
        static_cast<lapack_int>(k), 2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(),
        static_cast<lapack_int>(n), ifail.data());
    if (info != 0) throw std::runtime_error("symmetric_eigensolve: zhbevx failed with info " + std::to_string(info));
    vecs.assign(z.begin(), z.begin() + static_cast<long>(n * static_cast<std::size_t>(found)));
  }

  SpectralReport report{{}, {}, {}, m.label(), m.grid(), kHermitianTolerance};
  for (lapack_int c = 0; c < found; ++c) {
    ComplexVector v(vecs.begin() + static_cast<long>(static_cast<std::size_t>(c) * n),
                    vecs.begin() + static_cast<long>(static_cast<std::size_t>(c + 1) * n));
    const double nv = norm2(v);
    for (auto& x : v) x /= nv;
    fix_phase(v);
    const double lambda = w[static_cast<std::size_t>(c)];
    ComplexVector r = m.apply(v);
    for (std::size_t i = 0; i < n; ++i) r[i] -= lambda * v[i];
    report.eigenvalues.push_back(lambda);
    report.residual_norms.push_back(norm2(r));
    report.eigenvectors.push_back(std::move(v));
  }
  return report;
}

}  // namespace swanson
