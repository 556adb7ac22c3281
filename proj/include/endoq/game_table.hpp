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

#ifndef ENDOQ_GAME_TABLE_HPP
#define ENDOQ_GAME_TABLE_HPP

#include <endoq/coalition.hpp>
#include <endoq/rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace endoq {

enum class GameKind { cost, value };

enum class Variant { swaps, no_swaps };

inline std::string to_string(GameKind k)
{
    return k == GameKind::cost ? "cost" : "value";
}

inline std::string to_string(Variant v)
{
    return v == Variant::swaps ? "swaps" : "no_swaps";
}

// Dense characteristic function over all coalitions of {1..n}; the empty
// coalition is worth 0 by convention.
class GameTable {
public:
    GameTable(GameKind kind, int n)
        : kind_(kind), n_(n),
          worth_(std::size_t{1} << static_cast<unsigned>(n), Scalar(0))
    {
        if (n < 1 || n > 20) {
            throw std::invalid_argument("game table supports 1..20 agents");
        }
    }

    GameKind kind() const { return kind_; }
    int n() const { return n_; }

    const Scalar& at(Coalition s) const
    {
        check(s);
        return worth_[s.mask()];
    }

    void set(Coalition s, Scalar value)
    {
        check(s);
        if (s.empty()) {
            throw std::invalid_argument("the empty coalition is worth 0 by convention");
        }
        worth_[s.mask()] = std::move(value);
    }

    const Scalar& grand_worth() const { return at(Coalition::full(n_)); }

    const std::string& warning() const { return warning_; }
    void set_warning(std::string w) { warning_ = std::move(w); }

    // Flip between cost and value readings (worth negated).
    GameTable negated() const
    {
        GameTable g(kind_ == GameKind::cost ? GameKind::value : GameKind::cost, n_);
        for (std::uint32_t m = 1; m < worth_.size(); ++m) {
            g.worth_[m] = -worth_[m];
        }
        g.warning_ = warning_;
        return g;
    }

private:
    void check(Coalition s) const
    {
        if (s.mask() >= worth_.size()) {
            throw std::out_of_range("coalition outside the player set");
        }
    }

    GameKind kind_;
    int n_;
    std::vector<Scalar> worth_;
    std::string warning_;
};

} // namespace endoq

#endif // ENDOQ_GAME_TABLE_HPP
