#include <doctest.h>

#include "charfock/error.hpp"
#include "charfock/io.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ResidualTooLarge;  // sentinel: nothing thrown
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parse, serialize, parse is the identity") {
    Rng rng(71);
    const RowContraction t = random_row_contraction(rng, 2, 2, 0.7);
    const Json jt = rowcon_to_json(t);
    CHECK(rowcon_to_json(rowcon_from_json(jt)) == jt);

    const Json js = series_to_json(char_symbol(t, 3));
    CHECK(series_to_json(series_from_json(js)) == js);

    const Json jw = colligation_to_json(popescu_colligation(t));
    CHECK(colligation_to_json(colligation_from_json(jw)) == jw);

    const Json je = lifting_to_json(half_extension_lifting());
    CHECK(lifting_to_json(lifting_from_json(je)) == je);
    // Text round trip keeps every bit.
    CHECK(parse_json(jt.dump()) == jt);
  }

  TEST_CASE("lifting from C, A and the link") {
    const Json j = parse_json(R"({"C": {"dim": 1, "arity": 1, "blocks": [{"rows": 1, "cols": 1, "data": [[0.5, 0]]}]},
                                  "A": {"dim": 1, "arity": 1, "blocks": [{"rows": 1, "cols": 1, "data": [[0.5, 0]]}]},
                                  "gamma": {"rows": 1, "cols": 1, "data": [[0.6666666666666666, 0]]}})");
    CHECK(classify(j) == DocumentKind::Lifting);
    const Lifting e = lifting_from_json(j);
    CHECK(e.coupling()[0](0, 0).real() == doctest::Approx(0.5));
  }

  TEST_CASE("schema violations raise InvalidInput") {
    CHECK(code_of([] { parse_json("{\"rows\": 1,"); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { matrix_from_json(parse_json(R"({"rows": 2, "cols": 1, "data": [[1, 0]]})")); }) ==
          ErrorCode::InvalidInput);
    CHECK(code_of([] { complex_from_json(parse_json("[1, 2, 3]")); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] {
            rowcon_from_json(parse_json(R"({"dim": 1, "arity": 2, "blocks": [{"rows": 1, "cols": 1, "data": [[1, 0]]}]})"));
          }) == ErrorCode::InvalidInput);
    Json s = series_to_json(blaschke_series(0.3, 2));
    std::swap(s["coeffs"][1], s["coeffs"][2]);
    CHECK(code_of([&] { series_from_json(s); }) == ErrorCode::InvalidInput);
    CHECK(classify(parse_json("[1]")) == DocumentKind::Unknown);
    CHECK(code_of([] { read_json_file("/nonexistent/x.json"); }) == ErrorCode::InvalidInput);
  }
}
