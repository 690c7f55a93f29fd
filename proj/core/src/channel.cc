// Copyright 2026 The diqss Authors
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

#include "diqss/channel.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diqss {

void validate(const ChannelParams &params) {
    if (!(params.alpha >= 0.0)) {
        std::ostringstream msg;
        msg << "alpha must be nonnegative, got " << params.alpha;
        throw std::invalid_argument(msg.str());
    }
    if (!(params.eta_d > 0.0 && params.eta_d <= 1.0)) {
        std::ostringstream msg;
        msg << "eta_d must lie in (0, 1], got " << params.eta_d;
        throw std::invalid_argument(msg.str());
    }
    if (!(params.eta_c > 0.0 && params.eta_c <= 1.0)) {
        std::ostringstream msg;
        msg << "eta_c must lie in (0, 1], got " << params.eta_c;
        throw std::invalid_argument(msg.str());
    }
}

double transmittance(double distance_km, double alpha) {
    if (!(distance_km >= 0.0)) {
        std::ostringstream msg;
        msg << "distance must be nonnegative, got " << distance_km;
        throw std::invalid_argument(msg.str());
    }
    if (!(alpha >= 0.0)) {
        std::ostringstream msg;
        msg << "alpha must be nonnegative, got " << alpha;
        throw std::invalid_argument(msg.str());
    }
    return std::pow(10.0, -alpha * distance_km / 10.0);
}

double global_efficiency(double distance_km, const ChannelParams &params) {
    validate(params);
    return transmittance(distance_km, params.alpha) * params.eta_d *
           params.eta_c;
}

double distance_for_efficiency(double eta, const ChannelParams &params) {
    validate(params);
    double ceiling = params.eta_d * params.eta_c;
    if (!(eta > 0.0 && eta <= ceiling)) {
        std::ostringstream msg;
        msg << "eta must lie in (0, " << ceiling << "], got " << eta;
        throw std::domain_error(msg.str());
    }
    if (params.alpha == 0.0) {
        // Lossless fiber: only eta equal to the ceiling is reachable.
        if (eta == ceiling) {
            return 0.0;
        }
        std::ostringstream msg;
        msg << "alpha = 0 fiber cannot attenuate to eta = " << eta;
        throw std::domain_error(msg.str());
    }
    return 10.0 / params.alpha * std::log10(ceiling / eta);
}

}  // namespace diqss
