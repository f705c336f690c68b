// Copyright 2026 The Authors.
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

// Bicriteria coefficient pairs (rho_g, rho_c): the streaming output
// satisfies g(x) - c(x) >= rho_g * g(x*) - rho_c * c(x*).
//
// mu = |{x*} \ {x}| / k and nu = x(E) / k are the realized analysis
// parameters; the run report evaluates them at the worst case mu = 1,
// nu = 0.

#ifndef LATSTREAM_RATIOS_H_
#define LATSTREAM_RATIOS_H_

#include <optional>

#include "latstream/config.h"

namespace latstream {

struct RatioPair {
  double rho_g = 0.0;
  double rho_c = 0.0;
};

// delta = mu^2 + 4 - 4 nu.
double RootDiscriminant(double mu, double nu);
// t1 = (2 + mu + sqrt(delta)) / 2, the larger root of rho_c(t) = 1.
double RootT(double mu, double nu);

// ((t-1) / (t + mu(t-1) - nu), t (t-1) / (t + mu(t-1) - nu)).
RatioPair SubmodularRatios(double t, double mu, double nu);
// (alpha / (1 + alpha + mu - nu), (1 + alpha) / (1 + alpha + mu - nu)).
RatioPair AlphaRatios(double alpha, double mu, double nu);

struct TheoremCoefficients {
  RatioPair ratios;
  double parameter = 0.0;  // t or alpha actually used
  // Set when t was resolved as the root t1(mu, nu).
  std::optional<double> t1;
  // t1 > 1 + mu, evaluated in floating point. Only meaningful with t1.
  bool root_above_one_plus_mu = false;
};

// Coefficients for `mode` at (mu, nu). In submodular mode a missing
// parameter selects t = t1(mu, nu). Throws InputError("config") if mu or
// nu is outside [0, 1] or the parameter is outside its range.
TheoremCoefficients TheoremRatios(Mode mode, std::optional<double> parameter,
                                  double mu, double nu);

// Pair reported by a run: the configured t (or alpha) at mu = 1, nu = 0.
RatioPair WorstCaseRatios(const AlgoConfig& cfg);

}  // namespace latstream

#endif  // LATSTREAM_RATIOS_H_
