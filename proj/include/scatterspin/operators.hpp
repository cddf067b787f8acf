// Copyright 2026 The scatterspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scatterspin {

/// Per-ion level. The basis index of a word is sum_k level_k * 3^k.
enum class Level : uint8_t { zero = 0, one = 1, g = 2 };

using Word = std::vector<Level>;

/// Parses "01g..." (site 0 first). Throws ValidationError on other chars.
Word parse_word(std::string_view text);
std::string word_to_string(const Word &w);

/// Basis index of a word and back.
std::size_t word_index(const Word &w);
Word index_word(std::size_t index, std::size_t n);

/// raise = |0><1|, lower = |1><0|, p0/p1/pg are level projectors.
enum class Symbol : uint8_t { identity, p0, p1, pg, raise, lower };

struct OperatorString {
    std::vector<Symbol> symbols;

    OperatorString() = default;
    explicit OperatorString(std::vector<Symbol> s) : symbols(std::move(s)) {}

    static OperatorString identity(std::size_t n) {
        return OperatorString(std::vector<Symbol>(n, Symbol::identity));
    }

    /// One char per site from "I01g+-".
    static OperatorString parse(std::string_view text);

    std::size_t n() const { return symbols.size(); }
    std::string str() const;
};

enum class Axis : uint8_t { x, y, z };

/// Sparse product of Pauli matrices on distinct sites.
struct PauliString {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, Axis>> entries;

    PauliString() = default;
    /// Throws ValidationError on repeated or out-of-range sites.
    PauliString(std::size_t n, std::vector<std::pair<std::size_t, Axis>> entries);

    /// Dense form, one char per site from "IXYZ" (case-insensitive).
    static PauliString parse(std::string_view text);
};

}  // namespace scatterspin
