#pragma once

#include <iosfwd>
#include <string>

#include "ebreak/gaussian_core.hpp"

namespace ebreak {

// Plain-text CM: four rows of four whitespace-separated decimals. Blank
// lines and lines starting with '#' are skipped. Throws DomainError on
// malformed input and NonSymmetricError on an asymmetric matrix.
TwoModeCM parse_cm_text(std::istream& in);
TwoModeCM parse_cm_text(const std::string& text);
TwoModeCM read_cm_file(const std::string& path);

std::string format_cm_text(const TwoModeCM& cm);

}  // namespace ebreak
