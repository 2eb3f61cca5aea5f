#pragma once

#include "hitchin_glue/geometry.hpp"

#include <json.hpp>
#include <string>

namespace hg {

// Header {n_tau, n_theta_modes, component_tag, location, tau_min, tau_max};
// data is row-major (mode, point), each matrix as four (re, im) pairs a, b, c, d.
nlohmann::json field_to_json(const Field2D& f);
Field2D field_from_json(const nlohmann::json& j);

void write_field_json(const Field2D& f, const std::string& path);
Field2D read_field_json(const std::string& path);

// Binary layout: magic "HGF1", int32 n_tau, int32 n_theta_modes, int32 tag, int32 location,
// float64 tau_min, float64 tau_max, then 8 float64 per matrix in (mode, point) order.
void write_field_binary(const Field2D& f, const std::string& path);
Field2D read_field_binary(const std::string& path);

}  // namespace hg
