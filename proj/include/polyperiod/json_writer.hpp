#pragma once

#include <string>

#include "polyperiod/periods.hpp"

namespace polyperiod {

/* Shortest exact decimal form of a double (17 significant digits, %.17g). */
std::string format_double(double x);

/*
 * Serialize a period result as JSON with a fixed key order and fixed number
 * formatting, so identical results produce byte-identical output:
 * {genus, scheme, pi: {re, im}, pi_star: {re, im},
 *  residuals: {harmonic, closedness, normalization, symmetry, pi_pi_star},
 *  mesh: {vertices, edges, faces, min_angle_deg, min_rho}}.
 * min_angle_deg is null for surfaces without an embedding.
 */
std::string serialize_period_result(const PeriodResult& result);

}  // namespace polyperiod
