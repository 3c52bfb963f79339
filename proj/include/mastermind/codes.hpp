// codes.hpp -- codes, responses and the codemaker's scoring rule

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mastermind {

/// Largest alphabet that can be rendered with uppercase letters.
inline constexpr int kMaxColors = 26;

/// Largest supported code length.
inline constexpr int kMaxLength = 12;

/// Default cap on the number of codes a space may enumerate.
inline constexpr std::size_t kDefaultSpaceBudget = std::size_t(1) << 20;

/// Dimensions of a game: `kappa` colors, codes of length `ell`.
///
/// Throws `std::invalid_argument` unless `2 <= kappa <= 26` and
/// `1 <= ell <= kMaxLength`.
class Alphabet
{
public:
    constexpr Alphabet(int kappa, int ell) : kappa_(kappa), ell_(ell)
    {
        if (kappa < 2 || kappa > kMaxColors)
            throw std::invalid_argument("kappa must be between 2 and 26, got " +
                                        std::to_string(kappa));
        if (ell < 1 || ell > kMaxLength)
            throw std::invalid_argument("ell must be between 1 and " +
                                        std::to_string(kMaxLength) + ", got " +
                                        std::to_string(ell));
    }

    constexpr int kappa() const noexcept { return kappa_; }
    constexpr int ell() const noexcept { return ell_; }

    /// Number of codes in the space, saturating at SIZE_MAX.
    std::size_t space_size() const noexcept;

    constexpr bool operator==(const Alphabet &) const noexcept = default;

private:
    int kappa_;
    int ell_;
};

/// A combination of symbol indices. Symbol `i` renders as the i-th letter.
///
/// Codes compare lexicographically, which is the canonical iteration order
/// used everywhere a set of codes is kept.
class Code
{
public:
    Code() = default;

    /// Builds a code from symbol indices; throws `std::invalid_argument` if
    /// the length differs from `alphabet.ell()` or a symbol is out of range.
    Code(const Alphabet &alphabet, const std::vector<int> &symbols);

    int length() const noexcept { return length_; }
    int kappa() const noexcept { return kappa_; }
    int operator[](std::size_t i) const noexcept { return symbols_[i]; }

    std::vector<int> symbols() const;

    /// Letter form, e.g. "ABCA".
    std::string str() const;

    /// Position in the lexicographic enumeration of the space.
    std::size_t rank() const noexcept;

    auto operator<=>(const Code &) const noexcept = default;
    bool operator==(const Code &) const noexcept = default;

private:
    std::array<std::uint8_t, kMaxLength> symbols_{};
    std::uint8_t length_ = 0;
    std::uint8_t kappa_ = 0;
};

/// Feedback for a guess: `black` exact matches, `white` color-only matches.
struct Response
{
    int black = 0;
    int white = 0;

    /// True if the pair is a feedback some secret can produce for length
    /// `ell`: nonnegative, `black + white <= ell`, and not `<ell-1, 1>`.
    bool is_legal(int ell) const noexcept;

    bool is_win(int ell) const noexcept { return black == ell && white == 0; }

    /// "b-w" form, e.g. "2-1".
    std::string str() const;

    /// Dense index in [0, (ell+1)^2) used by partition tables.
    int slot(int ell) const noexcept { return black * (ell + 1) + white; }
    static Response from_slot(int slot, int ell) noexcept
    {
        return {slot / (ell + 1), slot % (ell + 1)};
    }

    static Response win(int ell) noexcept { return {ell, 0}; }

    auto operator<=>(const Response &) const noexcept = default;
    bool operator==(const Response &) const noexcept = default;
};

/// Parses "b-w" into a response. Throws `std::invalid_argument` on bad input.
Response parse_response(std::string_view text);

/// Parses letter form. Throws `std::invalid_argument` on a wrong length or a
/// letter outside the first `alphabet.kappa()` letters.
Code parse_code(std::string_view text, const Alphabet &alphabet);

/// All `kappa^ell` codes in lexicographic order.
///
/// Throws `std::length_error` without enumerating anything if the space is
/// larger than `budget` codes.
std::vector<Code> enumerate_space(const Alphabet &alphabet,
                                  std::size_t budget = kDefaultSpaceBudget);

/// The code at position `rank` of the lexicographic enumeration.
Code code_at(const Alphabet &alphabet, std::size_t rank);

/// The codemaker's response to `guess` when the hidden code is `secret`.
///
/// Symmetric in its arguments. Throws `std::invalid_argument` if the codes
/// differ in length or alphabet.
Response respond(const Code &guess, const Code &secret);

} // namespace mastermind
