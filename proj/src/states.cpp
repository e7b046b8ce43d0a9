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

#include "oegap/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

namespace oegap {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector vec3(Complex a, Complex b, Complex c) {
  ComplexVector v(3);
  v << a, b, c;
  return v;
}

ComplexVector kron2(const ComplexVector& a, const ComplexVector& b) { return tensor_vectors({a, b}); }

DensityMatrix mixture(const std::vector<ComplexVector>& vecs, std::span<const double> p, int d0, int d1) {
  if (p.size() != vecs.size()) throw std::invalid_argument("one weight per vector is required");
  double total = 0.0;
  for (double x : p) {
    if (!(x > 0.0)) throw std::invalid_argument("weights must be strictly positive");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
  ComplexMatrix m = ComplexMatrix::Zero(d0 * d1, d0 * d1);
  for (std::size_t i = 0; i < vecs.size(); ++i) m += p[i] * vecs[i] * vecs[i].adjoint();
  return DensityMatrix(m, {d0, d1});
}

}  // namespace

ComplexVector basis_vector(int d, int k) {
  ComplexVector v = ComplexVector::Zero(d);
  v(k) = 1.0;
  return v;
}

ComplexVector bell_vector() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = kInvSqrt2;
  return v;
}

ComplexVector ghz_vector(int n) {
  if (n < 2) throw std::invalid_argument("ghz requires n >= 2");
  const int d = 1 << n;
  ComplexVector v = ComplexVector::Zero(d);
  v(0) = v(d - 1) = kInvSqrt2;
  return v;
}

ComplexVector w_vector(int n) {
  if (n < 2) throw std::invalid_argument("w requires n >= 2");
  ComplexVector v = ComplexVector::Zero(1 << n);
  for (int k = 0; k < n; ++k) v(1 << k) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

DensityMatrix bell() { return DensityMatrix::from_pure(bell_vector(), {2, 2}); }
DensityMatrix ghz(int n) { return DensityMatrix::from_pure(ghz_vector(n), Dims(n, 2)); }
DensityMatrix w(int n) { return DensityMatrix::from_pure(w_vector(n), Dims(n, 2)); }

ComplexMatrix flip_operator(int d) {
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return f;
}

ComplexMatrix symmetric_projector(int d) {
  return 0.5 * (ComplexMatrix::Identity(d * d, d * d) + flip_operator(d));
}

ComplexMatrix antisymmetric_projector(int d) {
  return 0.5 * (ComplexMatrix::Identity(d * d, d * d) - flip_operator(d));
}

DensityMatrix werner(int d, double lambda) {
  if (d < 2) throw std::invalid_argument("werner requires d >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("werner requires 0 <= lambda <= 1");
  const double wp = d * (d + 1) / 2.0;
  const double wm = d * (d - 1) / 2.0;
  return DensityMatrix((1.0 - lambda) / wp * symmetric_projector(d) + lambda / wm * antisymmetric_projector(d),
                       {d, d});
}

CqState cq(int classical_dim, std::vector<ComplexMatrix> conditionals, std::vector<double> weights) {
  if (static_cast<int>(conditionals.size()) != classical_dim || weights.size() != conditionals.size())
    throw std::invalid_argument("cq: one conditional state and weight per classical value");
  double total = 0.0;
  for (double x : weights) {
    if (x < 0.0) throw std::invalid_argument("cq: negative weight");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("cq: weights must sum to 1");
  const int db = static_cast<int>(conditionals.front().rows());
  ComplexMatrix m = ComplexMatrix::Zero(classical_dim * db, classical_dim * db);
  for (int k = 0; k < classical_dim; ++k) {
    if (conditionals[k].rows() != db || conditionals[k].cols() != db)
      throw DimensionError("cq: conditional states must share one dimension");
    m.block(k * db, k * db, db, db) = weights[k] * conditionals[k];
  }
  return CqState{DensityMatrix(m, {classical_dim, db}), std::move(weights), std::move(conditionals)};
}

CqState trine_cq() {
  std::vector<ComplexMatrix> cond;
  for (int k = 0; k < 3; ++k) {
    ComplexVector psi(2);
    psi << kInvSqrt2, kInvSqrt2 * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
    cond.push_back(psi * psi.adjoint());
  }
  return cq(3, std::move(cond), {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

CqState cq_example() {
  ComplexVector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  const ComplexVector zero = basis_vector(2, 0);
  return cq(2, {zero * zero.adjoint(), plus * plus.adjoint()}, {0.5, 0.5});
}

ComplexVector cq_pure_vector() {
  ComplexVector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  return kInvSqrt2 * (kron2(basis_vector(2, 0), basis_vector(2, 0)) + kron2(basis_vector(2, 1), plus));
}

DensityMatrix cq_pure() { return DensityMatrix::from_pure(cq_pure_vector(), {2, 2}); }

DensityMatrix two_bell() {
  ComplexVector v = ComplexVector::Zero(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) v(a * 8 + b * 4 + a * 2 + b) = 0.5;  // |a b c d> with c = a, d = b
  return DensityMatrix::from_pure(v, {2, 2, 2, 2});
}

std::vector<ComplexVector> domino_basis() {
  const double s = kInvSqrt2;
  const ComplexVector e0 = basis_vector(3, 0), e1 = basis_vector(3, 1), e2 = basis_vector(3, 2);
  return {
      kron2(e1, e1),
      kron2(e0, vec3(s, s, 0)),
      kron2(e0, vec3(s, -s, 0)),
      kron2(e2, vec3(0, s, s)),
      kron2(e2, vec3(0, s, -s)),
      kron2(vec3(0, s, s), e0),
      kron2(vec3(0, s, -s), e0),
      kron2(vec3(s, s, 0), e2),
      kron2(vec3(s, -s, 0), e2),
  };
}

DensityMatrix domino_mixture(std::span<const double> p) {
  std::set<double> distinct(p.begin(), p.end());
  if (distinct.size() != p.size()) throw std::invalid_argument("domino mixture needs pairwise distinct weights");
  return mixture(domino_basis(), p, 3, 3);
}

std::vector<ComplexVector> tiles_upb() {
  const double s = kInvSqrt2;
  const double t = 1.0 / std::sqrt(3.0);
  const ComplexVector e0 = basis_vector(3, 0), e2 = basis_vector(3, 2);
  return {
      kron2(e0, vec3(s, -s, 0)),
      kron2(vec3(s, -s, 0), e2),
      kron2(e2, vec3(0, s, -s)),
      kron2(vec3(0, s, -s), e0),
      kron2(vec3(t, t, t), vec3(t, t, t)),
  };
}

DensityMatrix tiles_upb_state(std::span<const double> p) { return mixture(tiles_upb(), p, 3, 3); }

ComplexMatrix tiles_kernel_projector() {
  ComplexMatrix k = ComplexMatrix::Identity(9, 9);
  for (const auto& v : tiles_upb()) k -= v * v.adjoint();
  return k;
}

DensityMatrix dephase_local(const DensityMatrix& rho, int subsystem, const ComplexMatrix& basis) {
  const Dims& dims = rho.dims();
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) throw std::out_of_range("dephase_local: subsystem");
  if (basis.rows() != dims[subsystem] || basis.cols() != dims[subsystem])
    throw DimensionError("dephase_local: basis does not match the subsystem");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < dims[subsystem]; ++k) {
    std::vector<ComplexMatrix> factors;
    for (std::size_t s = 0; s < dims.size(); ++s)
      factors.push_back(static_cast<int>(s) == subsystem ? ComplexMatrix(basis.col(k) * basis.col(k).adjoint())
                                                         : ComplexMatrix::Identity(dims[s], dims[s]));
    const ComplexMatrix p = tensor(factors);
    out += p * rho.matrix() * p;
  }
  return DensityMatrix(out, dims);
}

DensityMatrix depolarize(const DensityMatrix& rho) { return DensityMatrix::maximally_mixed(rho.dims()); }

ComplexMatrix twirl_uu(const ComplexMatrix& op, int d) {
  if (op.rows() != d * d || op.cols() != d * d) throw DimensionError("twirl_uu: operator must act on C^d (x) C^d");
  const ComplexMatrix f = flip_operator(d);
  const Complex tr = op.trace();
  const Complex trf = (f * op).trace();
  // Solve [d^2 d; d d^2] [a; b] = [Tr op; Tr F op].
  const double dd = static_cast<double>(d);
  const double det = dd * dd * dd * dd - dd * dd;
  const Complex a = (dd * dd * tr - dd * trf) / det;
  const Complex b = (dd * dd * trf - dd * tr) / det;
  return a * ComplexMatrix::Identity(d * d, d * d) + b * f;
}

// ---------------------------------------------------------------------------

namespace {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> named;

  double get(const std::string& key, std::size_t pos, double fallback) const {
    if (auto it = named.find(key); it != named.end()) return std::stod(it->second);
    if (pos < positional.size()) return std::stod(positional[pos]);
    return fallback;
  }
  int get_int(const std::string& key, std::size_t pos, int fallback) const {
    const double v = get(key, pos, fallback);
    if (v != std::floor(v)) throw std::invalid_argument("parameter " + key + " must be an integer");
    return static_cast<int>(v);
  }
};

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

std::pair<std::string, Args> parse_spec(const std::string& raw) {
  const std::string spec = trim(raw);
  Args args;
  const auto open = spec.find('(');
  if (open == std::string::npos) return {spec, args};
  if (spec.back() != ')') throw std::invalid_argument("state spec '" + raw + "': missing ')'");
  const std::string name = spec.substr(0, open);
  const std::string body = spec.substr(open + 1, spec.size() - open - 2);
  std::size_t start = 0;
  while (start <= body.size() && !body.empty()) {
    const auto comma = body.find(',', start);
    const std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw std::invalid_argument("state spec '" + raw + "': empty parameter");
    if (const auto eq = item.find('='); eq != std::string::npos)
      args.named[item.substr(0, eq)] = item.substr(eq + 1);
    else
      args.positional.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return {name, args};
}

std::vector<double> ramp(int n) {
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1.0) / (n * (n + 1) / 2.0);
  return p;
}

using Builder = std::function<DensityMatrix(const Args&)>;

const std::vector<std::tuple<std::string, std::string, std::string, Builder>>& registry() {
  static const std::vector<std::tuple<std::string, std::string, std::string, Builder>> r = {
      {"bell", "bell", "two-qubit maximally entangled state", [](const Args&) { return bell(); }},
      {"ghz", "ghz(n=4)", "n-qubit GHZ state", [](const Args& a) { return ghz(a.get_int("n", 0, 4)); }},
      {"ghz4", "ghz4", "four-qubit GHZ state", [](const Args&) { return ghz(4); }},
      {"w", "w(n=3)", "n-qubit W state", [](const Args& a) { return w(a.get_int("n", 0, 3)); }},
      {"w3", "w3", "three-qubit W state", [](const Args&) { return w(3); }},
      {"w4", "w4", "four-qubit W state", [](const Args&) { return w(4); }},
      {"werner", "werner(d=3,lambda=0.7)", "U(x)U-invariant Werner state",
       [](const Args& a) { return werner(a.get_int("d", 0, 3), a.get("lambda", 1, 0.7)); }},
      {"trine", "trine", "classical qutrit correlated with qubit trine states",
       [](const Args&) { return trine_cq().state; }},
      {"cq-example", "cq-example", "(|00><00| + |1+><1+|)/2", [](const Args&) { return cq_example().state; }},
      {"cq-pure", "cq-pure", "(|00> + |1+>)/sqrt2", [](const Args&) { return cq_pure(); }},
      {"two-bell", "two-bell", "phi+ on AC and on BD", [](const Args&) { return two_bell(); }},
      {"domino", "domino", "domino-basis mixture with weights (1..9)/45",
       [](const Args&) {
         const auto p = ramp(9);
         return domino_mixture(p);
       }},
      {"tiles-upb", "tiles-upb", "tiles UPB mixture with weights (1..5)/15",
       [](const Args&) {
         const auto p = ramp(5);
         return tiles_upb_state(p);
       }},
      {"maximally-mixed", "maximally-mixed(d=2)", "identity state on C^d (x) C^d",
       [](const Args& a) {
         const int d = a.get_int("d", 0, 2);
         return DensityMatrix::maximally_mixed({d, d});
       }},
  };
  return r;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& [key, spec, summary, build] : registry()) out.push_back({spec, summary});
  return out;
}

DensityMatrix from_catalog(const std::string& spec) {
  auto [name, args] = parse_spec(spec);
  if (name == "2bell") name = "two-bell";
  for (const auto& [key, canonical, summary, build] : registry())
    if (key == name) return build(args);
  throw std::invalid_argument("unknown state '" + spec + "'");
}

}  // namespace oegap
