#pragma once

#include <string>

#include "ratelab/verifier.hpp"

namespace ratelab::cli {

// Log-log scatter of the posterior radius against the sample size, with the
// fitted slope line and the predicted-exponent line through the first point.
std::string curve_svg(const std::string& model, const RateCurve& curve);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ratelab::cli
