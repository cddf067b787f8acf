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
#include "scatterspin/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "scatterspin/error.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin {

using nlohmann::json;

namespace {

double number_at(const json &v, const std::string &where) {
    if (!v.is_number()) throw ValidationError(where + ": expected a number, got " + std::string(v.type_name()));
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where + ": value is not finite");
    return x;
}

std::size_t index_at(const json &v, const std::string &where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError(where + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

const json &field(const json &doc, const char *key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ValidationError(std::string("missing field \"") + key + "\"");
    return *it;
}

double unit_factor(const json &doc) {
    auto it = doc.find("units");
    if (it == doc.end()) return 1.0;
    if (!it->is_string()) throw ValidationError("units: expected \"hz\" or \"rad\"");
    std::string u = it->get<std::string>();
    if (u == "hz") return constants::two_pi;
    if (u == "rad") return 1.0;
    throw ValidationError("units: expected \"hz\" or \"rad\", got \"" + u + "\"");
}

std::vector<double> number_list(const json &v, const std::string &where, double factor) {
    if (!v.is_array()) throw ValidationError(where + ": expected an array");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(factor * number_at(v[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

}  // namespace

CouplingMatrix couplings_from_json(const json &doc) {
    if (!doc.is_object()) throw ValidationError("couplings document must be a JSON object");
    std::size_t n = index_at(field(doc, "n"), "n");
    if (n < 1) throw ValidationError("n: must be at least 1");
    double factor = unit_factor(doc);
    std::vector<double> dense(n * n, 0.0);
    bool has_upper = doc.contains("upper"), has_matrix = doc.contains("matrix");
    if (has_upper == has_matrix) throw ValidationError("couplings need exactly one of \"upper\" or \"matrix\"");
    if (has_upper) {
        const json &upper = doc["upper"];
        if (!upper.is_array()) throw ValidationError("upper: expected an array");
        std::vector<bool> seen(n * n, false);
        for (std::size_t r = 0; r < upper.size(); ++r) {
            std::string where = "upper[" + std::to_string(r) + "]";
            const json &e = upper[r];
            if (!e.is_array() || e.size() != 3) throw ValidationError(where + ": expected [i, j, value]");
            std::size_t i = index_at(e[0], where + "[0]"), j = index_at(e[1], where + "[1]");
            if (i >= j || j >= n) throw ValidationError(where + ": need 0 <= i < j < n");
            if (seen[i * n + j]) throw ValidationError(where + ": duplicate pair");
            seen[i * n + j] = true;
            double v = factor * number_at(e[2], where + "[2]");
            dense[i * n + j] = v;
            dense[j * n + i] = v;
        }
    } else {
        const json &m = doc["matrix"];
        if (!m.is_array() || m.size() != n) throw ValidationError("matrix: expected n rows");
        for (std::size_t i = 0; i < n; ++i) {
            std::string where = "matrix[" + std::to_string(i) + "]";
            if (!m[i].is_array() || m[i].size() != n) throw ValidationError(where + ": expected n entries");
            for (std::size_t j = 0; j < n; ++j) {
                dense[i * n + j] = factor * number_at(m[i][j], where + "[" + std::to_string(j) + "]");
            }
        }
    }
    return CouplingMatrix::from_dense(n, std::move(dense));
}

json couplings_to_json(const CouplingMatrix &couplings) {
    json upper = json::array();
    std::size_t n = couplings.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) upper.push_back({i, j, couplings(i, j)});
    }
    return json{{"n", n}, {"upper", upper}};
}

ModeData modes_from_json(const json &doc) {
    if (!doc.is_object()) throw ValidationError("mode document must be a JSON object");
    double factor = unit_factor(doc);
    ModeData m;
    m.n = index_at(field(doc, "n"), "n");
    m.omegas = number_list(field(doc, "omegas"), "omegas", factor);
    m.omegas_rabi = number_list(field(doc, "omegas_rabi"), "omegas_rabi", factor);
    m.mu = factor * number_at(field(doc, "mu"), "mu");
    const json &etas = field(doc, "etas");
    if (!etas.is_array()) throw ValidationError("etas: expected an array of rows");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        m.etas.push_back(number_list(etas[i], "etas[" + std::to_string(i) + "]", 1.0));
    }
    m.validate();
    return m;
}

json modes_to_json(const ModeData &modes) {
    return json{{"n", modes.n},
                {"omegas", modes.omegas},
                {"etas", modes.etas},
                {"omegas_rabi", modes.omegas_rabi},
                {"mu", modes.mu}};
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw FileError("error while reading " + path);
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write " + path);
    out << text;
    out.close();
    if (!out) throw FileError("error while writing " + path);
}

CouplingMatrix load_couplings(const std::string &path) { return couplings_from_json(read_json_file(path)); }

void save_couplings(const std::string &path, const CouplingMatrix &couplings) {
    write_text_file(path, couplings_to_json(couplings).dump(2) + "\n");
}

ModeData load_modes(const std::string &path) { return modes_from_json(read_json_file(path)); }

void save_modes(const std::string &path, const ModeData &modes) {
    write_text_file(path, modes_to_json(modes).dump(2) + "\n");
}

}  // namespace scatterspin
