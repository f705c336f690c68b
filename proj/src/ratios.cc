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

#include "latstream/ratios.h"

#include <cmath>

#include "latstream/errors.h"

namespace latstream {

double RootDiscriminant(double mu, double nu) { return mu * mu + 4.0 - 4.0 * nu; }

double RootT(double mu, double nu) {
  return (2.0 + mu + std::sqrt(RootDiscriminant(mu, nu))) / 2.0;
}

RatioPair SubmodularRatios(double t, double mu, double nu) {
  const double denom = t + mu * (t - 1.0) - nu;
  const double rho_g = (t - 1.0) / denom;
  return {rho_g, rho_g * t};
}

RatioPair AlphaRatios(double alpha, double mu, double nu) {
  const double denom = 1.0 + alpha + mu - nu;
  return {alpha / denom, (1.0 + alpha) / denom};
}

TheoremCoefficients TheoremRatios(Mode mode, std::optional<double> parameter,
                                  double mu, double nu) {
  if (!(mu >= 0.0 && mu <= 1.0) || !(nu >= 0.0 && nu <= 1.0)) {
    throw InputError("config", "mu and nu must lie in [0, 1]");
  }
  TheoremCoefficients out;
  if (mode == Mode::kSubmodular) {
    if (parameter) {
      if (!(*parameter >= 1.0)) throw InputError("config", "t must be >= 1");
      out.parameter = *parameter;
    } else {
      out.parameter = RootT(mu, nu);
      out.t1 = out.parameter;
      out.root_above_one_plus_mu = out.parameter > 1.0 + mu;
    }
    out.ratios = SubmodularRatios(out.parameter, mu, nu);
  } else {
    const double alpha = parameter.value_or(1.0);
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw InputError("config", "alpha must lie in (0, 1]");
    }
    out.parameter = alpha;
    out.ratios = AlphaRatios(alpha, mu, nu);
  }
  return out;
}

RatioPair WorstCaseRatios(const AlgoConfig& cfg) {
  if (cfg.mode == Mode::kSubmodular) {
    return SubmodularRatios(cfg.ResolvedT(), 1.0, 0.0);
  }
  return AlphaRatios(cfg.alpha, 1.0, 0.0);
}

}  // namespace latstream
