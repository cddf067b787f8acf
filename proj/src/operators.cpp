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

#include "scatterspin/operators.hpp"

#include <algorithm>

#include "scatterspin/error.hpp"

namespace scatterspin {

Word parse_word(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '0':
                w.push_back(Level::zero);
                break;
            case '1':
                w.push_back(Level::one);
                break;
            case 'g':
            case 'G':
                w.push_back(Level::g);
                break;
            default:
                throw ValidationError(std::string("bad level character '") + c + "' in word");
        }
    }
    return w;
}

std::string word_to_string(const Word &w) {
    std::string out;
    for (Level l : w) out.push_back("01g"[static_cast<int>(l)]);
    return out;
}

std::size_t word_index(const Word &w) {
    std::size_t index = 0;
    for (std::size_t k = w.size(); k-- > 0;) index = index * 3 + static_cast<std::size_t>(w[k]);
    return index;
}

Word index_word(std::size_t index, std::size_t n) {
    Word w(n);
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = static_cast<Level>(index % 3);
        index /= 3;
    }
    return w;
}

OperatorString OperatorString::parse(std::string_view text) {
    std::vector<Symbol> s;
    for (char c : text) {
        switch (c) {
            case 'I':
            case '_':
                s.push_back(Symbol::identity);
                break;
            case '0':
                s.push_back(Symbol::p0);
                break;
            case '1':
                s.push_back(Symbol::p1);
                break;
            case 'g':
                s.push_back(Symbol::pg);
                break;
            case '+':
                s.push_back(Symbol::raise);
                break;
            case '-':
                s.push_back(Symbol::lower);
                break;
            default:
                throw ValidationError(std::string("bad operator character '") + c + "'");
        }
    }
    return OperatorString(std::move(s));
}

std::string OperatorString::str() const {
    std::string out;
    for (Symbol s : symbols) out.push_back("I01g+-"[static_cast<int>(s)]);
    return out;
}

PauliString::PauliString(std::size_t n_, std::vector<std::pair<std::size_t, Axis>> e)
    : n(n_), entries(std::move(e)) {
    std::vector<bool> seen(n, false);
    for (auto [site, axis] : entries) {
        if (site >= n) {
            throw ValidationError("Pauli site " + std::to_string(site) + " out of range for n=" +
                                  std::to_string(n));
        }
        if (seen[site]) throw ValidationError("Pauli site " + std::to_string(site) + " repeated");
        seen[site] = true;
    }
    std::sort(entries.begin(), entries.end());
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<std::pair<std::size_t, Axis>> e;
    for (std::size_t k = 0; k < text.size(); ++k) {
        switch (text[k]) {
            case 'I':
            case 'i':
            case '_':
                break;
            case 'X':
            case 'x':
                e.emplace_back(k, Axis::x);
                break;
            case 'Y':
            case 'y':
                e.emplace_back(k, Axis::y);
                break;
            case 'Z':
            case 'z':
                e.emplace_back(k, Axis::z);
                break;
            default:
                throw ValidationError(std::string("bad Pauli character '") + text[k] + "'");
        }
    }
    return PauliString(text.size(), std::move(e));
}

}  // namespace scatterspin
