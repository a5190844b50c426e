// Copyright 2026 The AMBQC Authors
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

#include "ambqc/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace ambqc {

using detail::as_array;
using detail::as_double;
using detail::as_int;
using detail::as_string;
using detail::field;
using detail::Json;
using detail::malformed;

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

namespace {

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::string binary_header(const char *magic, int num_qubits) {
    std::string out(magic, 8);
    std::uint32_t fields[2] = {static_cast<std::uint32_t>(num_qubits), 0};
    out.append(reinterpret_cast<const char *>(fields), sizeof(fields));
    return out;
}

void append_complex(std::string &out, const Complex *data, std::size_t count) {
    out.append(reinterpret_cast<const char *>(data), count * sizeof(Complex));
}

// Returns q after checking magic and payload size.
int check_binary(const std::string &bytes, const char *magic, std::size_t entries_per_dim, int max_qubits,
                 const std::string &what) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), magic, 8) != 0) {
        throw ValidationError(ValidationCode::MalformedField, what + " dump has a bad magic header", "header");
    }
    std::uint32_t fields[2];
    std::memcpy(fields, bytes.data() + 8, sizeof(fields));
    if (fields[0] > static_cast<std::uint32_t>(max_qubits) || fields[1] != 0) {
        throw ValidationError(ValidationCode::MalformedField, what + " dump has an unsupported qubit count", "header.q");
    }
    int q = static_cast<int>(fields[0]);
    std::size_t dim = std::size_t{1} << q;
    std::size_t expected = 16 + dim * (entries_per_dim == 1 ? 1 : dim) * sizeof(Complex);
    if (bytes.size() != expected) {
        throw ValidationError(ValidationCode::MalformedField,
                              what + " dump has " + std::to_string(bytes.size()) + " bytes, expected " +
                                  std::to_string(expected),
                              "payload");
    }
    return q;
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from(const Json &j, const std::string &where) {
    const Json &a = as_array(j, where);
    if (a.size() != 2) {
        malformed(where, "expected [re, im]");
    }
    return {as_double(a[0], where + "[0]"), as_double(a[1], where + "[1]")};
}

}  // namespace

void save_state(const PureState &state, const std::filesystem::path &path) {
    std::string out = binary_header(kStateMagic, state.num_qubits());
    append_complex(out, state.amplitudes().data(), state.dimension());
    write_file(path, out);
}

PureState SchmidtRecord::realize() const {
    PureState psi = expand_to_statevector(locals, coeffs);
    psi.normalize();
    return psi;
}

std::string schmidt_record_to_json(const SchmidtRecord &r) {
    Json root;
    root["format"] = kSchmidtFormat;
    root["q"] = r.locals.num_qubits;
    root["K"] = r.locals.rank;
    root["measure"] = to_string(r.measure);
    root["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    Json locals = Json::array();
    for (const Eigen::Vector2cd &v : r.locals.vectors) {
        locals.push_back(Json::array({complex_json(v(0)), complex_json(v(1))}));
    }
    root["locals"] = std::move(locals);
    Json coeffs = Json::array();
    for (Complex z : r.coeffs) {
        coeffs.push_back(complex_json(z));
    }
    root["coeffs"] = std::move(coeffs);
    return root.dump(2) + "\n";
}

SchmidtRecord schmidt_record_from_json(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        malformed("byte " + std::to_string(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (as_string(field(root, "format", ""), "format") != kSchmidtFormat) {
        throw ValidationError(ValidationCode::SchemaVersion, "unsupported Schmidt record format", "format");
    }
    SchmidtRecord r;
    r.locals.num_qubits = static_cast<int>(as_int(field(root, "q", ""), "q", 1, kMaxStateQubits));
    r.locals.rank = static_cast<int>(as_int(field(root, "K", ""), "K", 1, 1 << 20));
    r.measure = parse_local_measure(as_string(field(root, "measure", ""), "measure"));
    if (root.contains("seed") && !root["seed"].is_null()) {
        r.seed = static_cast<std::uint64_t>(
            as_int(root["seed"], "seed", 0, std::numeric_limits<long long>::max()));
    }
    const Json &locals = as_array(field(root, "locals", ""), "locals");
    std::size_t expected = static_cast<std::size_t>(r.locals.num_qubits) * r.locals.rank;
    if (locals.size() != expected) {
        malformed("locals", "expected K * q = " + std::to_string(expected) + " vectors");
    }
    for (std::size_t i = 0; i < locals.size(); ++i) {
        std::string where = detail::index("locals", i);
        const Json &v = as_array(locals[i], where);
        if (v.size() != 2) {
            malformed(where, "expected two components");
        }
        r.locals.vectors.emplace_back(complex_from(v[0], where + "[0]"), complex_from(v[1], where + "[1]"));
    }
    const Json &coeffs = as_array(field(root, "coeffs", ""), "coeffs");
    if (coeffs.size() != static_cast<std::size_t>(r.locals.rank)) {
        malformed("coeffs", "expected K coefficients");
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        r.coeffs.push_back(complex_from(coeffs[i], detail::index("coeffs", i)));
    }
    return r;
}

void save_schmidt_record(const SchmidtRecord &record, const std::filesystem::path &path) {
    write_file(path, schmidt_record_to_json(record));
}

PureState load_state(const std::filesystem::path &path) {
    std::string bytes = read_file(path);
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kStateMagic, 8) == 0) {
        int q = check_binary(bytes, kStateMagic, 1, kMaxStateQubits, "state");
        std::vector<Complex> amps(std::size_t{1} << q);
        std::memcpy(amps.data(), bytes.data() + 16, amps.size() * sizeof(Complex));
        PureState psi(q, std::move(amps));
        if (!psi.is_normalized()) {
            throw ValidationError(ValidationCode::InvariantViolation, "state dump is not normalized", "payload");
        }
        return psi;
    }
    return schmidt_record_from_json(bytes).realize();
}

void save_operator(const DenseOperator &op, const std::filesystem::path &path) {
    int q = std::countr_zero(static_cast<std::size_t>(op.rows()));
    std::string out = binary_header(kOperatorMagic, q);
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = op;
    append_complex(out, rows.data(), static_cast<std::size_t>(rows.size()));
    write_file(path, out);
}

DenseOperator load_operator(const std::filesystem::path &path) {
    std::string bytes = read_file(path);
    int q = check_binary(bytes, kOperatorMagic, 2, kMaxDenseQubits, "operator");
    Eigen::Index dim = Eigen::Index{1} << q;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(dim, dim);
    std::memcpy(rows.data(), bytes.data() + 16, static_cast<std::size_t>(rows.size()) * sizeof(Complex));
    return rows;
}

}  // namespace ambqc
