// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cylflow {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index, double c) {
  Exponent e(nvars, 0);
  e.at(index) = 1;
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, double c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

double Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const int nv = std::max(a.nvars_, b.nvars_);
  if (!a.terms_.empty() && !b.terms_.empty() && a.nvars_ != b.nvars_)
    throw std::invalid_argument("Polynomial: arity mismatch in product");
  Polynomial r(nv);
  Polynomial::Exponent e(nv);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int v = 0; v < nv; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::laplacian(int first, int count) const {
  Polynomial r(nvars_);
  for (int v = first; v < first + count; ++v) r += derivative(v).derivative(v);
  return r;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == d) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::embedded(int nvars_new, int offset) const {
  if (offset < 0 || offset + nvars_ > nvars_new) throw std::invalid_argument("Polynomial: bad embedding");
  Polynomial r(nvars_new);
  for (const auto& [e, c] : terms_) {
    Exponent n(nvars_new, 0);
    std::copy(e.begin(), e.end(), n.begin() + offset);
    r.add_term(n, c);
  }
  return r;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) < nvars_) throw std::invalid_argument("Polynomial: too few coordinates");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int v = 0; v < nvars_; ++v)
      for (int p = 0; p < e[v]; ++p) t *= x[v];
    sum += t;
  }
  return sum;
}

std::vector<Polynomial::Exponent> exponents_of_degree(int nvars, int d) {
  std::vector<Polynomial::Exponent> out;
  Polynomial::Exponent e(nvars, 0);
  // Recursive fill from the first variable down gives decreasing lex order.
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (v == nvars - 1) {
      e[v] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[v] = a;
      self(self, v + 1, left - a);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  return out;
}

}  // namespace cylflow
