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

// Exact-rational infeasibility argument for a fully symmetric PPT POVM that
// distinguishes the four chi states.
//
// Every element of such a POVM has the block form handled by block_decompose(),
// with Bell-diagonal blocks. The chain below works on Bell coefficients only:
//   1. eigen-conditions N_i chi_j = delta_ij chi_j fix T_1 in terms of P_1,
//   2. N_i >= 0 and P_i^Gamma >= 0 give linear inequalities on (a0, a1, a2),
//   3. a nonnegative combination of four of them is identically zero, forcing
//      a1 = 1/2 and a0 = a2 = 1/6,
//   4. then sum_i |T_i^Gamma| = 4/3 (Psi_0 + Psi_1 + Psi_2) must fit under I.
// Each step is checked with explicit multipliers, never with tolerances.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace pptlab::analytic {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// constant + sum_v coeff[v] * v over named variables.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(Rational constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  static LinearForm variable(const std::string& name, Rational coeff = 1);

  Rational constant() const { return constant_; }
  Rational coeff(const std::string& name) const;
  const std::map<std::string, Rational>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && constant_ == Rational(0); }

  LinearForm substitute(const std::string& name, const LinearForm& value) const;
  Rational evaluate(const std::map<std::string, Rational>& point) const;
  std::string str() const;

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(Rational s);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator-(LinearForm a) { return a *= Rational(-1); }
  friend LinearForm operator*(Rational s, LinearForm a) { return a *= s; }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

 private:
  void prune();
  Rational constant_ = 0;
  std::map<std::string, Rational> terms_;
};

/// Bell coefficients (nu_0..nu_3) with symbolic entries.
using SymbolicBell = std::array<LinearForm, 4>;

/// Bell-coefficient image of Psi_i under W conjugation: Psi_i -> Psi_{kWBellPermutation[i]}.
inline constexpr std::array<int, 4> kWBellPermutation = {0, 2, 3, 1};

SymbolicBell symbolic_bell_pt(const SymbolicBell& nu);

/// A hypothesis `form >= 0` with a label.
struct Inequality {
  std::string label;
  LinearForm form;
};

/// Checks `claim >= 0` from hypotheses: claim - sum_j m_j h_j must be a constant >= 0,
/// with all m_j >= 0.
bool certify_inequality(const LinearForm& claim, const std::vector<Inequality>& hypotheses,
                        const std::map<std::string, Rational>& multipliers);

/// Solves `forms == 0` for the listed variables by exact elimination; returns
/// substitutions name -> form in the remaining variables. Throws if inconsistent.
std::map<std::string, LinearForm> solve_linear(std::vector<LinearForm> forms,
                                               const std::vector<std::string>& unknowns);

struct ProofStep {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> inputs;
  bool verdict = false;
};

struct CoefficientLedger {
  Rational a0, a1, a2, b0, b1, b2;
};

struct ProofTrace {
  std::vector<ProofStep> steps;
  CoefficientLedger forced;
  std::vector<Inequality> hypotheses;
  /// Largest Bell coefficient of sum_i |T_i^Gamma|; the argument needs it <= 1.
  Rational terminal_eigenvalue;

  bool all_verified() const;
  bool contradiction() const { return all_verified() && terminal_eigenvalue > Rational(1); }
};

ProofTrace analytic_infeasibility();

}  // namespace pptlab::analytic
