#pragma once

#include <string>

#include "constellation/affine.hpp"
#include "constellation/latin.hpp"
#include "constellation/mub.hpp"
#include "constellation/search.hpp"
#include "json.hpp"

namespace constellation::io {

using nlohmann::json;

/// {"order": d, "classes": [[[point, ...], ...], ...]}
json constellation_to_json(const AffineConstellation& c);
AffineConstellation constellation_from_json(const json& j);

/// {"dim": d, "bases": [[[[re, im], ...] per column] per basis]}
json basis_set_to_json(const MUConstellation& c);
MUConstellation basis_set_from_json(const json& j);

json report_to_json(const VerificationReport& r);
json defect_to_json(const DefectReport& r);
json certificate_to_json(const MateCertificate& c);
json squares_to_json(const std::vector<LatinSquare>& squares);

/// Status, budget echo, seed and the best configuration. Elapsed time is
/// left out so the document depends only on the inputs.
json search_result_to_json(const SearchResult& r, const SearchConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
json read_json_file(const std::string& path);

}  // namespace constellation::io
