#pragma once

#include "orthohaar/matrix.hpp"
#include "orthohaar/sampler.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace orthohaar {

/// Always 17 significant digits ("%.17g"); every double survives a round trip.
std::string format_17g(double x);

/// One matrix per block, rows as space-separated values, blank line between blocks.
void write_text(std::ostream& os, std::span<const HaarSample> samples);
/// [{"p": int, "seed": "seed:stream:offset", "rows": [[...], ...]}, ...]
void write_json(std::ostream& os, std::span<const HaarSample> samples);

std::vector<Matrix> read_json_matrices(const std::string& text);
std::vector<Matrix> read_text_matrices(const std::string& text);

}  // namespace orthohaar
