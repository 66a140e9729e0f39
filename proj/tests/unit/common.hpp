#pragma once

#include <string>

#include "angles/field.hpp"

#ifndef ANGLES_DATA_DIR
#define ANGLES_DATA_DIR "data"
#endif

inline angles::FieldSpec field(const std::string& name) {
  return angles::load_field(std::string(ANGLES_DATA_DIR) + "/fields/" + name + ".json");
}

// reference values from tests/oracles/golden_values.py
namespace ref {
constexpr double theta = 1.324717957244746025960908854478097340734;
constexpr double phi = 0.387977564421472377410239708590833683101;
constexpr double abs_cp = 0.8688369618327093018065699641910972224775;
constexpr double x_2_minus_theta[3] = {-0.3926248342620032623657861312720241444085,
                                       1.001031373348051818483272732249105891967,
                                       6.075047924492869994307353026085263688791};
constexpr double w1[3] = {2.370795433356489351607329520681967453897, -2.370795433356489351607329520681967453897, 0.0};
constexpr double w2[3] = {-0.9198154379751998698786502750852527444716, 0.9198154379751998698786502750852527444716,
                          0.1591549430918953357688837633725143620345};
constexpr double rho_p5[2] = {0.6959262273291579716301671306065378126075, 0.2487804016928984887858761371443035063625};
constexpr double rho_p7[2] = {0.9656791110024031509517297059506862875479, 0.3006926251850633571144793352770275983902};
constexpr double gaussian_rho_1p2i = 0.7048327646991335;
constexpr double sqrt2_rho_3p1 = 0.29038458982225196;
constexpr double sqrt2_rho_5p3 = 0.7096154101777484;
}  // namespace ref
