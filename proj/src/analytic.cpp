// Copyright 2026 The pptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pptlab/analytic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pptlab::analytic {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm LinearForm::variable(const std::string& name, Rational coeff) {
  LinearForm f;
  f.terms_[name] = coeff;
  f.prune();
  return f;
}

Rational LinearForm::coeff(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LinearForm::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Rational(0); });
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  constant_ += o.constant_;
  for (const auto& [k, v] : o.terms_) terms_[k] += v;
  prune();
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  constant_ -= o.constant_;
  for (const auto& [k, v] : o.terms_) terms_[k] -= v;
  prune();
  return *this;
}

LinearForm& LinearForm::operator*=(Rational s) {
  constant_ *= s;
  for (auto& [k, v] : terms_) v *= s;
  prune();
  return *this;
}

LinearForm LinearForm::substitute(const std::string& name, const LinearForm& value) const {
  const Rational c = coeff(name);
  if (c == Rational(0)) return *this;
  LinearForm out = *this;
  out.terms_.erase(name);
  out += c * value;
  return out;
}

Rational LinearForm::evaluate(const std::map<std::string, Rational>& point) const {
  Rational v = constant_;
  for (const auto& [k, c] : terms_) {
    auto it = point.find(k);
    if (it == point.end()) throw std::invalid_argument("no value for variable " + k);
    v += c * it->second;
  }
  return v;
}

std::string LinearForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c < Rational(0) ? " - " : " + ");
    else if (c < Rational(0)) os << '-';
    const Rational a = boost::abs(c);
    if (a != Rational(1)) os << to_string(a) << '*';
    os << k;
    first = false;
  }
  if (first) return to_string(constant_);
  if (constant_ != Rational(0)) os << (constant_ < Rational(0) ? " - " : " + ") << to_string(boost::abs(constant_));
  return os.str();
}

// ---------------------------------------------------------------------------

SymbolicBell symbolic_bell_pt(const SymbolicBell& nu) {
  LinearForm trace;
  for (const auto& v : nu) trace += v;
  SymbolicBell mu;
  // Same index pairing as bell_pt_coeffs: mu_i = Tr/2 - nu_{3-i}.
  for (int i = 0; i < 4; ++i) mu[i] = Rational(1, 2) * trace - nu[3 - i];
  return mu;
}

bool certify_inequality(const LinearForm& claim, const std::vector<Inequality>& hypotheses,
                        const std::map<std::string, Rational>& multipliers) {
  LinearForm residual = claim;
  for (const auto& [label, m] : multipliers) {
    if (m < Rational(0)) return false;
    auto it = std::find_if(hypotheses.begin(), hypotheses.end(),
                           [&](const Inequality& h) { return h.label == label; });
    if (it == hypotheses.end()) return false;
    residual -= m * it->form;
  }
  return residual.is_constant() && residual.constant() >= Rational(0);
}

std::map<std::string, LinearForm> solve_linear(std::vector<LinearForm> forms,
                                               const std::vector<std::string>& unknowns) {
  std::map<std::string, LinearForm> solution;
  for (const auto& u : unknowns) {
    auto pivot = std::find_if(forms.begin(), forms.end(),
                              [&](const LinearForm& f) { return f.coeff(u) != Rational(0); });
    if (pivot == forms.end()) continue;
    const Rational c = pivot->coeff(u);
    // u = -(f - c u) / c
    LinearForm value = pivot->substitute(u, LinearForm(0));
    value *= Rational(-1) / c;
    forms.erase(pivot);
    for (auto& f : forms) f = f.substitute(u, value);
    for (auto& [name, s] : solution) s = s.substitute(u, value);
    solution[u] = value;
  }
  for (const auto& f : forms) {
    if (!f.is_zero()) throw std::domain_error("linear system leaves residual " + f.str() + " = 0");
  }
  return solution;
}

bool ProofTrace::all_verified() const {
  return !steps.empty() &&
         std::all_of(steps.begin(), steps.end(), [](const ProofStep& s) { return s.verdict; });
}

// ---------------------------------------------------------------------------

namespace {

using Var = LinearForm;

SymbolicBell rotate_by_w(const SymbolicBell& x) {
  SymbolicBell y;
  for (int i = 0; i < 4; ++i) y[kWBellPermutation[i]] = x[i];
  return y;
}

SymbolicBell substitute_all(SymbolicBell x, const std::map<std::string, LinearForm>& s) {
  for (auto& f : x)
    for (const auto& [name, value] : s) f = f.substitute(name, value);
  return x;
}

std::string bell_str(const SymbolicBell& x) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < 4; ++i) os << (i ? ", " : "") << x[i].str();
  os << ')';
  return os.str();
}

bool same_bell(const SymbolicBell& a, const SymbolicBell& b) {
  for (int i = 0; i < 4; ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

Rational constant_of(const LinearForm& f) {
  if (!f.is_constant()) throw std::logic_error("expected a constant, got " + f.str());
  return f.constant();
}

}  // namespace

ProofTrace analytic_infeasibility() {
  ProofTrace trace;
  auto step = [&](std::string claim, std::vector<std::pair<std::string, std::string>> inputs,
                  bool verdict) {
    trace.steps.push_back({std::move(claim), std::move(inputs), verdict});
  };

  const Var a0 = Var::variable("a0"), a1 = Var::variable("a1"), a2 = Var::variable("a2");
  const Var b0 = Var::variable("b0"), b1 = Var::variable("b1"), b2 = Var::variable("b2");
  const Var one(1);

  // U-invariance equalizes the Psi_2 and Psi_3 coefficients of the element-1 blocks.
  std::array<SymbolicBell, 4> p, t;
  p[1] = {a0, a1, a2, a2};
  t[1] = {b0, b1, b2, b2};
  p[2] = rotate_by_w(p[1]);
  p[3] = rotate_by_w(p[2]);
  t[2] = rotate_by_w(t[1]);
  t[3] = rotate_by_w(t[2]);
  // Completeness: the P blocks sum to I and the T blocks to 0.
  for (int k = 0; k < 4; ++k) {
    p[0][k] = one - (p[1][k] + p[2][k] + p[3][k]);
    t[0][k] = -(t[1][k] + t[2][k] + t[3][k]);
  }

  const Var rest = one - a1 - Rational(2) * a2;
  step("P_0 = (1-3a0) Psi_0 + (1-a1-2a2)(I - Psi_0)", {{"P_0", bell_str(p[0])}},
       same_bell(p[0], {one - Rational(3) * a0, rest, rest, rest}));

  // (i) Eigen-conditions N_i chi_j = delta_ij chi_j. In the (A1B1 outer) x (Bell inner)
  // representation chi_j has inner index j and outer vector (1,0,0,s), s = +1 for j = 0
  // and -1 otherwise; only the P and T blocks act on it.
  std::vector<LinearForm> eigen_equations;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Rational s = (j == 0) ? 1 : -1;
      const Rational target = (i == j) ? 1 : 0;
      eigen_equations.push_back(p[i][j] + s * t[i][j] - target);
      eigen_equations.push_back(t[i][j] + s * p[i][j] - target * s);
    }
  }
  const auto b_of_a = solve_linear(eigen_equations, {"b0", "b1", "b2"});
  {
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const auto& [name, value] : b_of_a) inputs.emplace_back(name, value.str());
    auto sub = [&](const Var& f) {
      Var out = f;
      for (const auto& [name, value] : b_of_a) out = out.substitute(name, value);
      return out;
    };
    const bool ok = b_of_a.size() == 3 && sub(a1 - b1) == Var(1) && sub(a2 - b2).is_zero() &&
                    sub(a0 + b0).is_zero();
    step("N_i chi_j = delta_ij chi_j forces a1-b1=1, a2-b2=0, a0+b0=0", std::move(inputs), ok);
  }
  for (int i = 0; i < 4; ++i) {
    p[i] = substitute_all(p[i], b_of_a);
    t[i] = substitute_all(t[i], b_of_a);
  }
  step("T_0 = 3a0 Psi_0 + (1-a1-2a2)(I - Psi_0)", {{"T_0", bell_str(t[0])}},
       same_bell(t[0], {Rational(3) * a0, rest, rest, rest}));

  // (ii) Hypotheses. [[P, T], [T, P]] >= 0 with commuting Bell-diagonal blocks is
  // p_k +- t_k >= 0; the (A1B1 = 00) block of N_i^Gamma is P_i^Gamma.
  auto& hyp = trace.hypotheses;
  for (int i = 0; i < 4; ++i) {
    const SymbolicBell mu = symbolic_bell_pt(p[i]);
    for (int k = 0; k < 4; ++k) {
      const std::string n = std::to_string(i), kk = std::to_string(k);
      hyp.push_back({"N" + n + ">=0 (p" + kk + "+t" + kk + ")", p[i][k] + t[i][k]});
      hyp.push_back({"N" + n + ">=0 (p" + kk + "-t" + kk + ")", p[i][k] - t[i][k]});
      hyp.push_back({"P" + n + "^G>=0 (mu" + kk + ")", mu[k]});
    }
  }

  struct Claim {
    std::string text;
    LinearForm form;
    std::map<std::string, Rational> multipliers;
  };
  const std::vector<Claim> claims = {
      {"N_1 >= 0 => a0 >= 0", a0, {{"N1>=0 (p0-t0)", Rational(1, 2)}}},
      {"N_1 >= 0 => a2 >= 0", a2, {{"N1>=0 (p2+t2)", Rational(1, 2)}}},
      {"N_1 >= 0 => a1 >= 1/2", a1 - Rational(1, 2), {{"N1>=0 (p1+t1)", Rational(1, 2)}}},
      {"N_0, N_1 >= 0 => a1 <= 1",
       one - a1,
       {{"N0>=0 (p1+t1)", Rational(1, 2)}, {"N1>=0 (p2+t2)", Rational(1)}}},
      {"N_0 >= 0 => a1 + 2a2 <= 1", rest, {{"N0>=0 (p1+t1)", Rational(1, 2)}}},
      {"N_0 >= 0 => a0 <= 1/6", Rational(1, 6) - a0, {{"N0>=0 (p0-t0)", Rational(1, 6)}}},
      {"P_0^G >= 0 => 1-3a0 <= 3-3(a1+2a2)",
       Rational(3) * rest - (one - Rational(3) * a0),
       {{"P0^G>=0 (mu3)", Rational(2)}}},
      {"P_1^G >= 0 => a1 <= a0 + 2a2", a0 + Rational(2) * a2 - a1, {{"P1^G>=0 (mu2)", Rational(2)}}},
  };
  for (const auto& c : claims) {
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const auto& [label, m] : c.multipliers) inputs.emplace_back(label, to_string(m));
    step(c.text + "  [" + c.form.str() + " >= 0]", std::move(inputs),
         certify_inequality(c.form, hyp, c.multipliers));
  }

  // (iii) 0 <= 1-6a0 <= 3-3(a1+2a2+a0) <= 3-3(a1+a1) <= 0. The four links are
  // nonnegative multiples of hypotheses and sum to the zero form.
  const std::map<std::string, Rational> farkas = {{"N0>=0 (p0-t0)", Rational(1)},
                                                  {"P0^G>=0 (mu3)", Rational(2)},
                                                  {"P1^G>=0 (mu2)", Rational(6)},
                                                  {"N1>=0 (p1+t1)", Rational(3)}};
  const std::vector<std::pair<std::string, LinearForm>> chain = {
      {"1-6a0 >= 0", one - Rational(6) * a0},
      {"3-3(a1+2a2+a0) >= 1-6a0",
       Rational(3) - Rational(3) * (a1 + Rational(2) * a2 + a0) - (one - Rational(6) * a0)},
      {"3-3(a1+a1) <= 3-3(a1+2a2+a0)", Rational(3) * (a1 + Rational(2) * a2 + a0) - Rational(6) * a1},
      {"3-3(a1+a1) <= 0", Rational(6) * a1 - Rational(3)},
  };
  LinearForm total;
  std::vector<LinearForm> tight;
  for (const auto& [label, m] : farkas) {
    auto it = std::find_if(hyp.begin(), hyp.end(), [&](const Inequality& h) { return h.label == label; });
    total += m * it->form;
    tight.push_back(it->form);
  }
  {
    LinearForm chain_total;
    for (const auto& [text, form] : chain) chain_total += form;
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const auto& [label, m] : farkas) inputs.emplace_back(label, to_string(m));
    step("chain 0 <= 1-6a0 <= 3-3(a1+2a2+a0) <= 3-3(a1+a1) <= 0 collapses (weighted sum is 0)",
         std::move(inputs), total.is_zero() && chain_total == total);
  }

  const auto forced = solve_linear(tight, {"a0", "a1", "a2"});
  const Rational fa0 = constant_of(forced.at("a0"));
  const Rational fa1 = constant_of(forced.at("a1"));
  const Rational fa2 = constant_of(forced.at("a2"));
  trace.forced = {fa0, fa1, fa2, -fa0, fa1 - 1, fa2};
  step("tight links force a1 = 1/2, a2 = a0 = 1/6",
       {{"a0", to_string(fa0)}, {"a1", to_string(fa1)}, {"a2", to_string(fa2)}},
       fa1 == Rational(1, 2) && fa0 == Rational(1, 6) && fa2 == Rational(1, 6));

  const std::map<std::string, Rational> point = {{"a0", fa0}, {"a1", fa1}, {"a2", fa2}};
  {
    bool all = true;
    int tight_count = 0;
    for (const auto& h : hyp) {
      const Rational v = h.form.evaluate(point);
      all = all && v >= Rational(0);
      tight_count += (v == Rational(0));
    }
    step("forced point satisfies every hypothesis (tight or strict)",
         {{"hypotheses", std::to_string(hyp.size())}, {"tight", std::to_string(tight_count)}}, all);
  }

  // (iv) |T_i^Gamma| and the completeness of the R blocks.
  SymbolicBell sum_abs;
  bool each_third = true;
  for (int i = 0; i < 4; ++i) {
    SymbolicBell ti;
    for (int k = 0; k < 4; ++k) ti[k] = LinearForm(t[i][k].evaluate(point));
    const SymbolicBell mu = symbolic_bell_pt(ti);
    for (int k = 0; k < 4; ++k) {
      const Rational v = boost::abs(constant_of(mu[k]));
      sum_abs[k] += LinearForm(v);
      each_third = each_third && v == (k < 3 ? Rational(1, 3) : Rational(0));
    }
  }
  step("|T_i^G| = 1/3 (Psi_0 + Psi_1 + Psi_2) for 0 <= i <= 3", {{"sum_i |T_i^G|", bell_str(sum_abs)}},
       each_third);

  const SymbolicBell identity = {one, one, one, one};
  step("sum_i R_i = I implies sum_i R_i^G = I", {{"I^G", bell_str(symbolic_bell_pt(identity))}},
       same_bell(symbolic_bell_pt(identity), identity));

  Rational largest = 0;
  for (const auto& f : sum_abs) largest = std::max(largest, constant_of(f));
  trace.terminal_eigenvalue = largest;
  step("R_i^G >= |T_i^G| would need I >= 4/3 (Psi_0 + Psi_1 + Psi_2): violated since " +
           to_string(largest) + " > 1",
       {{"max eigenvalue", to_string(largest)}}, largest == Rational(4, 3) && largest > Rational(1));
  return trace;
}

}  // namespace pptlab::analytic
