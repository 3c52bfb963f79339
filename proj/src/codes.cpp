#include "mastermind/codes.hpp"

#include <charconv>
#include <limits>

namespace mastermind {

std::size_t Alphabet::space_size() const noexcept
{
    std::size_t n = 1;
    for (int i = 0; i < ell_; ++i)
    {
        if (n > std::numeric_limits<std::size_t>::max() / std::size_t(kappa_))
            return std::numeric_limits<std::size_t>::max();
        n *= std::size_t(kappa_);
    }
    return n;
}

Code::Code(const Alphabet &alphabet, const std::vector<int> &symbols)
{
    if (symbols.size() != std::size_t(alphabet.ell()))
        throw std::invalid_argument("code must have " +
                                    std::to_string(alphabet.ell()) +
                                    " symbols, got " +
                                    std::to_string(symbols.size()));
    for (std::size_t i = 0; i < symbols.size(); ++i)
    {
        if (symbols[i] < 0 || symbols[i] >= alphabet.kappa())
            throw std::invalid_argument("symbol " + std::to_string(symbols[i]) +
                                        " at position " + std::to_string(i) +
                                        " is outside the alphabet");
        symbols_[i] = std::uint8_t(symbols[i]);
    }
    length_ = std::uint8_t(alphabet.ell());
    kappa_ = std::uint8_t(alphabet.kappa());
}

std::vector<int> Code::symbols() const
{
    return {symbols_.begin(), symbols_.begin() + length_};
}

std::string Code::str() const
{
    std::string s(length_, 'A');
    for (int i = 0; i < length_; ++i)
        s[i] = char('A' + symbols_[i]);
    return s;
}

std::size_t Code::rank() const noexcept
{
    std::size_t r = 0;
    for (int i = 0; i < length_; ++i)
        r = r * kappa_ + symbols_[i];
    return r;
}

bool Response::is_legal(int ell) const noexcept
{
    if (black < 0 || white < 0 || black + white > ell)
        return false;
    return !(black == ell - 1 && white == 1);
}

std::string Response::str() const
{
    return std::to_string(black) + "-" + std::to_string(white);
}

Response parse_response(std::string_view text)
{
    auto dash = text.find('-');
    if (dash == std::string_view::npos)
        throw std::invalid_argument("response must look like b-w, got \"" +
                                    std::string(text) + "\"");
    Response r;
    auto parse = [&](std::string_view part, int &out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc() || p != part.data() + part.size() || part.empty())
            throw std::invalid_argument("response must look like b-w, got \"" +
                                        std::string(text) + "\"");
    };
    parse(text.substr(0, dash), r.black);
    parse(text.substr(dash + 1), r.white);
    return r;
}

Code parse_code(std::string_view text, const Alphabet &alphabet)
{
    if (text.size() != std::size_t(alphabet.ell()))
        throw std::invalid_argument("code \"" + std::string(text) +
                                    "\" must have length " +
                                    std::to_string(alphabet.ell()));
    std::vector<int> symbols(text.size());
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        int s = text[i] - 'A';
        if (s < 0 || s >= alphabet.kappa())
        {
            char last = char('A' + alphabet.kappa() - 1);
            throw std::invalid_argument("code \"" + std::string(text) +
                                        "\" has letter '" + text[i] +
                                        "' outside A-" + last);
        }
        symbols[i] = s;
    }
    return Code(alphabet, symbols);
}

Code code_at(const Alphabet &alphabet, std::size_t rank)
{
    if (rank >= alphabet.space_size())
        throw std::out_of_range("rank " + std::to_string(rank) +
                                " outside the code space");
    std::vector<int> symbols(alphabet.ell());
    for (int i = alphabet.ell() - 1; i >= 0; --i)
    {
        symbols[i] = int(rank % alphabet.kappa());
        rank /= alphabet.kappa();
    }
    return Code(alphabet, symbols);
}

std::vector<Code> enumerate_space(const Alphabet &alphabet, std::size_t budget)
{
    const std::size_t n = alphabet.space_size();
    if (n > budget)
        throw std::length_error("code space " + std::to_string(alphabet.kappa()) +
                                "^" + std::to_string(alphabet.ell()) +
                                " exceeds the budget of " +
                                std::to_string(budget) + " codes");

    std::vector<Code> codes;
    codes.reserve(n);
    std::vector<int> symbols(alphabet.ell(), 0);
    for (std::size_t k = 0; k < n; ++k)
    {
        codes.emplace_back(alphabet, symbols);
        // odometer increment, rightmost position fastest
        for (int i = alphabet.ell() - 1; i >= 0; --i)
        {
            if (++symbols[i] < alphabet.kappa())
                break;
            symbols[i] = 0;
        }
    }
    return codes;
}

Response respond(const Code &guess, const Code &secret)
{
    if (guess.length() != secret.length() || guess.kappa() != secret.kappa())
        throw std::invalid_argument("cannot compare " + guess.str() + " with " +
                                    secret.str() + ": different game dimensions");

    std::array<std::uint8_t, kMaxColors> unmatched{};
    int black = 0;
    const int n = guess.length();
    for (int i = 0; i < n; ++i)
    {
        if (guess[i] == secret[i])
            ++black;
        else
            ++unmatched[secret[i]];
    }
    int white = 0;
    for (int i = 0; i < n; ++i)
    {
        if (guess[i] != secret[i] && unmatched[guess[i]] > 0)
        {
            --unmatched[guess[i]];
            ++white;
        }
    }
    return {black, white};
}

} // namespace mastermind
