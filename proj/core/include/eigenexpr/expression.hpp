#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace eigenexpr {

/// The six basic expressions, in the fixed row order used by every table
/// this library prints or reads.
enum class Expression { kSurprise, kHappy, kFear, kAnger, kSad, kDisgust };

inline constexpr std::size_t kExpressionCount = 6;
inline constexpr std::array<Expression, kExpressionCount> kAllExpressions = {
    Expression::kSurprise, Expression::kHappy, Expression::kFear,
    Expression::kAnger,    Expression::kSad,   Expression::kDisgust};

constexpr std::size_t index_of(Expression e) { return static_cast<std::size_t>(e); }

/// "Surprise", "Happy", ...
std::string_view expression_name(Expression e);
/// Case-insensitive match on the canonical spelling.
std::optional<Expression> parse_expression(std::string_view name);

}  // namespace eigenexpr
