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

#ifndef DIQSS_CHANNEL_H
#define DIQSS_CHANNEL_H

// Fiber-loss model relating the dealer-to-party distance to the global
// detection efficiency eta = 10^(-alpha d / 10) * eta_d * eta_c.

namespace diqss {

struct ChannelParams {
    double alpha = 0.2;   // fiber attenuation, dB/km
    double eta_d = 0.98;  // detector efficiency
    double eta_c = 0.99;  // coupling efficiency
};

// Throws std::invalid_argument for alpha < 0 or efficiencies outside (0, 1].
void validate(const ChannelParams &params);

// 10^(-alpha d / 10); distance in km.
double transmittance(double distance_km, double alpha);

double global_efficiency(double distance_km, const ChannelParams &params);

// Inverse of global_efficiency. Throws std::domain_error when eta is not in
// (0, eta_d * eta_c].
double distance_for_efficiency(double eta, const ChannelParams &params);

}  // namespace diqss

#endif
