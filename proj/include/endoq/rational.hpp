// Copyright 2026 the endoq authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENDOQ_RATIONAL_HPP
#define ENDOQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace endoq {

// All worths, weights and allocations are exact rationals; nothing in the
// library ever rounds.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Thrown when an input exceeds a documented size cap (CLI exit code 3).
struct cap_exceeded final : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical "p/q" rendering; integers print without the "/1".
inline std::string to_string(const Scalar& x)
{
    const BigInt num = numerator(x);
    const BigInt den = denominator(x);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

// Procedure: parse_scalar
// Accepts integers ("-3"), decimal strings ("2.5") and fractions ("7/2"),
// with one optional sign in front.  Digits are accumulated by hand so that
// leading zeros are never mistaken for a base prefix.
inline Scalar parse_scalar(const std::string& text)
{
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("not a rational number: '" + text + "'");
    };

    const std::size_t begin = text.find_first_not_of(" \t");
    const std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) {
        throw bad();
    }
    std::string s = text.substr(begin, end - begin + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) {
        throw bad();
    }

    const auto digits_value = [&](const std::string& t) -> BigInt {
        if (t.empty()) {
            throw bad();
        }
        BigInt value = 0;
        for (const char c : t) {
            if (c < '0' || c > '9') {
                throw bad();
            }
            value = value * 10 + (c - '0');
        }
        return value;
    };

    Scalar magnitude;
    if (const std::size_t slash = s.find('/'); slash != std::string::npos) {
        const BigInt den = digits_value(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator: '" + text + "'");
        }
        magnitude = Scalar(digits_value(s.substr(0, slash)), den);
    } else if (const std::size_t dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (dot == 0 || frac.empty()) {
            throw bad();
        }
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        magnitude = Scalar(digits_value(s.substr(0, dot)) * scale +
                               digits_value(frac),
                           scale);
    } else {
        magnitude = Scalar(digits_value(s));
    }
    return negative ? Scalar(-magnitude) : magnitude;
}

} // namespace endoq

#endif // ENDOQ_RATIONAL_HPP
