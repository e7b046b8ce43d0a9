// Copyright 2026 The oegap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>

#include "opt_internal.hpp"

namespace oegap {

namespace {

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

}  // namespace

WernerAnalytic werner_analytic(int d, double lambda) {
  if (d < 2) throw std::invalid_argument("werner_analytic requires d >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("werner_analytic requires 0 <= lambda <= 1");
  const double dd = d;
  const double x = (dd + 2.0 * lambda - 1.0) / (dd + 1.0);
  const double wp = dd * (dd + 1.0) / 2.0;
  const double wm = dd * (dd - 1.0) / 2.0;
  const double s_m0 = binary_entropy(x) + (1.0 - x) * std::log2(dd) + x * std::log2(dd * (dd - 1.0));
  double s_vn = binary_entropy(lambda);
  if (lambda < 1.0) s_vn += (1.0 - lambda) * std::log2(wp);
  if (lambda > 0.0) s_vn += lambda * std::log2(wm);

  ComplexMatrix diag = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) diag(i * d + i, i * d + i) = 1.0;
  Povm witness({diag, ComplexMatrix::Identity(d * d, d * d) - diag}, {d, d}, PovmClass::LOStar, {"D", "X"});
  return WernerAnalytic{x, s_m0, s_vn, s_m0 - s_vn, std::move(witness)};
}

std::optional<double> werner_parameter(const DensityMatrix& rho) {
  const Dims& dims = rho.dims();
  if (dims.size() != 2 || dims[0] != dims[1] || dims[0] < 2) return std::nullopt;
  const int d = dims[0];
  if (operator_norm(twirl_uu(rho.matrix(), d) - rho.matrix()) > 1e-10) return std::nullopt;
  const double trf = (flip_operator(d) * rho.matrix()).trace().real();
  return std::clamp((1.0 - trf) / 2.0, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

std::array<ComplexMatrix, 6> w3_invariant_projectors() {
  const ComplexVector w = w_vector(3);
  ComplexVector wbar = ComplexVector::Zero(8);
  for (int idx : {3, 5, 6}) wbar(idx) = 1.0 / std::sqrt(3.0);
  ComplexMatrix p1 = ComplexMatrix::Zero(8, 8), p2 = ComplexMatrix::Zero(8, 8);
  for (int idx : {1, 2, 4}) p1(idx, idx) = 1.0;
  for (int idx : {3, 5, 6}) p2(idx, idx) = 1.0;
  ComplexMatrix q5 = ComplexMatrix::Zero(8, 8), q6 = ComplexMatrix::Zero(8, 8);
  q5(0, 0) = 1.0;
  q6(7, 7) = 1.0;
  const ComplexMatrix qw = w * w.adjoint();
  const ComplexMatrix qwbar = wbar * wbar.adjoint();
  return {qw, qwbar, p1 - qw, p2 - qwbar, q5, q6};
}

namespace {

const Dims kQubits3{2, 2, 2};
constexpr std::array<double, 5> kVolumes{1.0, 2.0, 2.0, 1.0, 1.0};

struct W3Problem {
  std::array<ComplexMatrix, 6> q = w3_invariant_projectors();
  std::array<ComplexMatrix, 6> pt;

  W3Problem() {
    for (int a = 0; a < 6; ++a) pt[a] = partial_transpose(q[a], kQubits3, {0});
  }
  ComplexMatrix element(const std::array<double, 5>& t) const {
    ComplexMatrix m = q[0];
    for (int a = 0; a < 5; ++a) m += t[a] * q[a + 1];
    return m;
  }
  double pt_min(const std::array<double, 5>& t) const {
    ComplexMatrix m = pt[0];
    for (int a = 0; a < 5; ++a) m += t[a] * pt[a + 1];
    return min_eigenvalue(m);
  }
  static double trace(const std::array<double, 5>& t) {
    double tr = 1.0;
    for (int a = 0; a < 5; ++a) tr += kVolumes[a] * t[a];
    return tr;
  }
};

double snap(double v, bool& ok) {
  double best = std::round(v);
  for (int q = 1; q <= 24; ++q) {
    const double cand = std::round(v * q) / q;
    if (std::abs(cand - v) < std::abs(best - v)) best = cand;
  }
  ok = ok && std::abs(best - v) <= 1e-4;
  return best;
}

}  // namespace

PptW3Result ppt_gap_w3() {
  const W3Problem prob;
  // Coarse grid; keep the strictly feasible point of least trace.
  std::array<double, 5> best_t{};
  double best_trace = std::numeric_limits<double>::infinity();
  std::array<int, 5> idx{};
  while (true) {
    std::array<double, 5> t;
    for (int a = 0; a < 5; ++a) t[a] = 0.25 * idx[a];
    const double tr = W3Problem::trace(t);
    if (tr < best_trace && prob.pt_min(t) > 1e-9) {
      best_trace = tr;
      best_t = t;
    }
    int a = 0;
    while (a < 5 && ++idx[a] > 8) idx[a++] = 0;
    if (a == 5) break;
  }
  if (!std::isfinite(best_trace)) throw std::runtime_error("ppt_gap_w3: no feasible grid point");

  // Log-barrier polish: damped Newton on
  //   trace(t) - mu (log det PT(M'(t)) + sum_a log t_a)
  // for a decreasing sequence of mu, starting from the grid point moved inside t > 0.
  std::array<double, 5> t = best_t;
  for (double& v : t) v = std::max(v, 0.05);
  if (prob.pt_min(t) <= 0.0) t.fill(2.0);
  Eigen::Map<const Eigen::Matrix<double, 5, 1>> volumes(kVolumes.data());
  auto barrier = [&](const std::array<double, 5>& v, double mu, double& value) {
    for (double x : v)
      if (!(x > 0.0)) return false;
    ComplexMatrix m = prob.pt[0];
    for (int a = 0; a < 5; ++a) m += v[a] * prob.pt[a + 1];
    Eigen::LLT<ComplexMatrix> llt(0.5 * (m + m.adjoint()));
    if (llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
    if (!std::isfinite(logdet)) return false;
    value = W3Problem::trace(v) - mu * logdet;
    for (double x : v) value -= mu * std::log(x);
    return true;
  };
  for (double mu = 1e-1; mu >= 1e-13; mu /= 4.0) {
    for (int iter = 0; iter < 100; ++iter) {
      ComplexMatrix m = prob.pt[0];
      for (int a = 0; a < 5; ++a) m += t[a] * prob.pt[a + 1];
      const ComplexMatrix inv = m.inverse();
      std::array<ComplexMatrix, 5> ia;
      for (int a = 0; a < 5; ++a) ia[a] = inv * prob.pt[a + 1];
      Eigen::Matrix<double, 5, 1> g;
      Eigen::Matrix<double, 5, 5> h;
      for (int a = 0; a < 5; ++a) {
        g(a) = volumes(a) - mu * ia[a].trace().real() - mu / t[a];
        for (int b = 0; b <= a; ++b) h(a, b) = h(b, a) = mu * (ia[a] * ia[b]).trace().real();
        h(a, a) += mu / (t[a] * t[a]);
      }
      const Eigen::Matrix<double, 5, 1> step = -h.ldlt().solve(g);
      const double decrement = -g.dot(step);
      if (!(decrement > 1e-28)) break;
      double current = 0.0;
      barrier(t, mu, current);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        std::array<double, 5> trial;
        for (int a = 0; a < 5; ++a) trial[a] = t[a] + alpha * step(a);
        double value = 0.0;
        if (barrier(trial, mu, value) && value <= current - 0.25 * alpha * decrement) {
          t = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }

  PptW3Result out{0.0, 0.0, t, false, false, Povm::trivial(kQubits3)};
  bool ok = true;
  std::array<double, 5> snapped;
  for (int a = 0; a < 5; ++a) snapped[a] = snap(t[a], ok);
  if (ok && prob.pt_min(snapped) >= -1e-12) {
    out.t = snapped;
    out.snapped = true;
  }
  out.trace = W3Problem::trace(out.t);
  out.gap = std::log2(out.trace);

  const ComplexMatrix m = prob.element(out.t);
  const ComplexMatrix rest = ComplexMatrix::Identity(8, 8) - m;
  const PartitionSpec full = PartitionSpec::full(3);
  bool verified = is_ppt_operator(m, kQubits3, full) && is_ppt_operator(rest, kQubits3, full);
  verified = verified && min_eigenvalue(m) >= -1e-12 && min_eigenvalue(rest) >= -1e-12;
  for (double v : out.t) verified = verified && v <= 1.0 + 1e-12;
  out.verified = verified;
  out.witness = Povm({m, rest}, kQubits3, PovmClass::PPT, {"M'", "1-M'"});
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Eigenseparability e) {
  switch (e) {
    case Eigenseparability::Eigenseparable: return "Eigenseparable";
    case Eigenseparability::NotEigenseparable: return "NotEigenseparable";
    case Eigenseparability::Unknown: return "Unknown";
  }
  return "Unknown";
}

EigenseparabilityReport eigenseparability(const DensityMatrix& rho, const PartitionSpec& partition) {
  require_valid(rho);
  const Spectrum spec = spectral(rho.matrix());
  EigenseparabilityReport report;
  bool all_separable = true;
  bool any_entangled = false;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    EigenspaceVerdict v;
    v.eigenvalue = spec.eigenvalues[k];
    v.rank = spec.multiplicities[k];
    v.kernel = std::abs(v.eigenvalue) <= 1e-10;
    v.separability = is_separable_effect(spec.projectors[k], rho.dims(), partition);
    v.ppt = is_ppt_operator(spec.projectors[k], rho.dims(), partition);
    all_separable = all_separable && v.separability == Separability::Separable;
    any_entangled = any_entangled || v.separability == Separability::Entangled;
    report.eigenspaces.push_back(v);
  }
  report.verdict = any_entangled   ? Eigenseparability::NotEigenseparable
                   : all_separable ? Eigenseparability::Eigenseparable
                                   : Eigenseparability::Unknown;
  return report;
}

}  // namespace oegap
