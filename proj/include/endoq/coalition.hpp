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

#ifndef ENDOQ_COALITION_HPP
#define ENDOQ_COALITION_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace endoq {

// Agents are identified by their weight rank 1..n (rank 1 = largest weight).
// A coalition is the bitmask with bit (i-1) set for each member i.
class Coalition {
public:
    constexpr Coalition() = default;
    constexpr explicit Coalition(std::uint32_t mask) : bits_(mask) {}

    static Coalition of(std::initializer_list<int> agents)
    {
        Coalition s;
        for (int i : agents) {
            s.bits_ |= bit(i);
        }
        return s;
    }

    static constexpr Coalition singleton(int agent) { return Coalition(bit(agent)); }

    static constexpr Coalition full(int n)
    {
        return Coalition(n == 0 ? 0u : (std::uint32_t{1} << n) - 1u);
    }

    constexpr std::uint32_t mask() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }

    constexpr bool contains(int agent) const { return (bits_ & bit(agent)) != 0; }
    constexpr bool subset_of(Coalition t) const { return (bits_ & ~t.bits_) == 0; }

    constexpr Coalition with(int agent) const { return Coalition(bits_ | bit(agent)); }
    constexpr Coalition without(int agent) const { return Coalition(bits_ & ~bit(agent)); }

    constexpr Coalition operator|(Coalition o) const { return Coalition(bits_ | o.bits_); }
    constexpr Coalition operator&(Coalition o) const { return Coalition(bits_ & o.bits_); }
    constexpr Coalition minus(Coalition o) const { return Coalition(bits_ & ~o.bits_); }

    constexpr bool operator==(const Coalition&) const = default;
    constexpr bool operator<(Coalition o) const { return bits_ < o.bits_; }

    // Members in increasing agent index.
    std::vector<int> members() const
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t m = bits_; m != 0; m &= m - 1) {
            out.push_back(std::countr_zero(m) + 1);
        }
        return out;
    }

    std::string to_string() const
    {
        std::string out = "{";
        bool first = true;
        for (int i : members()) {
            if (!first) {
                out += ",";
            }
            out += std::to_string(i);
            first = false;
        }
        return out + "}";
    }

private:
    static constexpr std::uint32_t bit(int agent)
    {
        return std::uint32_t{1} << (agent - 1);
    }

    std::uint32_t bits_ = 0;
};

// All non-empty coalitions over {1..n} in increasing mask order.
inline std::vector<Coalition> all_coalitions(int n)
{
    std::vector<Coalition> out;
    const std::uint32_t limit = Coalition::full(n).mask();
    out.reserve(limit);
    for (std::uint32_t m = 1; m <= limit; ++m) {
        out.emplace_back(m);
    }
    return out;
}

// Non-empty subsets of s, increasing mask order.
inline std::vector<Coalition> subsets_of(Coalition s)
{
    std::vector<Coalition> out;
    const std::uint32_t m = s.mask();
    for (std::uint32_t sub = m; sub != 0; sub = (sub - 1) & m) {
        out.emplace_back(sub);
    }
    std::vector<Coalition> asc(out.rbegin(), out.rend());
    return asc;
}

} // namespace endoq

#endif // ENDOQ_COALITION_HPP
