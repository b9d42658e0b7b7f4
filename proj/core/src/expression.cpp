#include "eigenexpr/expression.hpp"

#include <algorithm>
#include <cctype>

namespace eigenexpr {

std::string_view expression_name(Expression e) {
  switch (e) {
    case Expression::kSurprise: return "Surprise";
    case Expression::kHappy: return "Happy";
    case Expression::kFear: return "Fear";
    case Expression::kAnger: return "Anger";
    case Expression::kSad: return "Sad";
    case Expression::kDisgust: return "Disgust";
  }
  return "?";
}

std::optional<Expression> parse_expression(std::string_view name) {
  const auto iequal = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) ==
                    std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (Expression e : kAllExpressions) {
    if (iequal(expression_name(e), name)) return e;
  }
  return std::nullopt;
}

}  // namespace eigenexpr
