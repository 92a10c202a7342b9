#pragma once

// JSON encoding of matrices, row contractions, symbols, colligations and
// liftings. Complex scalars are [re, im]; matrices are {rows, cols, data}
// with data in row-major order. Every parse error raises InvalidInput.

#include <string>

#include <json.hpp>

#include "charfock/colligation.hpp"
#include "charfock/fockseries.hpp"
#include "charfock/lifting.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json rowcon_to_json(const RowContraction& t);
RowContraction rowcon_from_json(const Json& j);

Json series_to_json(const NCSeries& s);
NCSeries series_from_json(const Json& j);

Json colligation_to_json(const Colligation& w);
Colligation colligation_from_json(const Json& j);

/// Written as {E, split} so that a round trip is exact.
Json lifting_to_json(const Lifting& e);
/// Accepts {C, A, gamma} or {E, split}.
Lifting lifting_from_json(const Json& j, double rank_tol = kDefaultRankTol);

enum class DocumentKind { RowContraction, Series, Colligation, Lifting, Unknown };

/// Guesses the schema from the keys present.
DocumentKind classify(const Json& j);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace charfock
