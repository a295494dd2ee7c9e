#include "rgfo/error.hpp"
#include "rgfo/formula.hpp"

namespace rgfo::corpus {
namespace {

// The depth-5 sentence: an edge x1x2 inside a K4 such that every y1 outside
// N(x1) ∪ N(x2) either has no common neighbour with x1, or some common
// neighbour z of x1, x2 has all its common neighbours with y1 inside
// N(x1) ∪ N(x2).
constexpr const char* kTheorem1 =
    "Ex x1 Ex x2 ("
    "(Ex x3 Ex x4 (x1 ~ x2 & x1 ~ x3 & x1 ~ x4 & x2 ~ x3 & x2 ~ x4 & x3 ~ x4)) & "
    "Ax y1 (y1 ~ x1 | y1 ~ x2 | Ax y2 (!(y2 ~ x1 & y2 ~ y1)) | "
    "Ex z (z ~ x1 & z ~ x2 & Ax u (!(u ~ z & u ~ y1) | u ~ x1 | u ~ x2))))";

// Its prenex form with quantifier string ∃∃∃∃∀∀∃∀.
constexpr const char* kTheorem1Pnf =
    "Ex x1 Ex x2 Ex x3 Ex x4 Ax y1 Ax y2 Ex z Ax u ("
    "(x1 ~ x2 & x1 ~ x3 & x1 ~ x4 & x2 ~ x3 & x2 ~ x4 & x3 ~ x4) & "
    "(y1 ~ x1 | y1 ~ x2 | !(y2 ~ x1 & y2 ~ y1) | "
    "(z ~ x1 & z ~ x2 & !(u ~ z & u ~ y1)) | u ~ x1 | u ~ x2))";

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"theorem1", "theorem1-pnf"};
  return n;
}

std::string text(std::string_view name) {
  if (name == "theorem1") return kTheorem1;
  if (name == "theorem1-pnf") return kTheorem1Pnf;
  throw PreconditionError("unknown corpus entry '" + std::string(name) + "'");
}

Formula get(std::string_view name) { return normalize(parse(text(name))); }

}  // namespace rgfo::corpus
