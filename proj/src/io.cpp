#include "probclone/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace probclone {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& detail) {
    throw ParseError(path.string() + ": " + detail);
}

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail(path, "cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path, e.what());
    }
}

const json& require_field(const json& obj, const char* key, const std::filesystem::path& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(path, std::string(key) + ": missing field");
    }
    return obj.at(key);
}

int64_t require_int(const json& obj, const char* key, const std::filesystem::path& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_number_integer()) {
        fail(path, std::string(key) + ": expected an integer");
    }
    return v.get<int64_t>();
}

double require_number(const json& obj, const char* key, const std::filesystem::path& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_number()) {
        fail(path, std::string(key) + ": expected a number");
    }
    return v.get<double>();
}

std::string require_string(const json& obj, const char* key, const std::filesystem::path& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_string()) {
        fail(path, std::string(key) + ": expected a string");
    }
    return v.get<std::string>();
}

Complex read_pair(const json& v, const std::string& where, const std::filesystem::path& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path, where + ": expected an [re, im] pair");
    }
    return Complex(v[0].get<double>(), v[1].get<double>());
}

json write_pair(const Complex& c) { return json::array({c.real(), c.imag()}); }

Vector read_vector(const json& v, Eigen::Index size, const std::string& where,
                   const std::filesystem::path& path) {
    if (!v.is_array()) {
        fail(path, where + ": expected an array of [re, im] pairs");
    }
    if (size >= 0 && static_cast<Eigen::Index>(v.size()) != size) {
        std::ostringstream msg;
        msg << where << ": expected " << size << " amplitudes, got " << v.size();
        fail(path, msg.str());
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::ostringstream where_i;
        where_i << where << "[" << i << "]";
        out(static_cast<Eigen::Index>(i)) = read_pair(v[i], where_i.str(), path);
    }
    return out;
}

json write_vector(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(write_pair(v(i)));
    }
    return out;
}

Matrix read_matrix(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& where,
                   const std::filesystem::path& path) {
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows * cols) {
        std::ostringstream msg;
        msg << where << ": expected " << rows * cols << " row-major [re, im] pairs";
        fail(path, msg.str());
    }
    Matrix out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::ostringstream where_rc;
            where_rc << where << "[" << (r * cols + c) << "]";
            out(r, c) = read_pair(v[static_cast<std::size_t>(r * cols + c)], where_rc.str(), path);
        }
    }
    return out;
}

json write_matrix(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(write_pair(m(r, c)));
        }
    }
    return out;
}

// Saved amplitudes are already normalized; adopting them without a rescale
// keeps load(save(x)) bit-exact. Raw user input may still need the rescale.
StateVector adopt_state(Vector amplitudes, const std::string& where,
                        const std::filesystem::path& path) {
    try {
        if (std::abs(amplitudes.norm() - 1.0) <= kNormTol) {
            return StateVector::from_normalized(std::move(amplitudes));
        }
        return StateVector(std::move(amplitudes));
    } catch (const ZeroVectorError& e) {
        fail(path, where + ": " + e.what());
    }
}

void write_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(path.string() + ": cannot open file for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw ParseError(path.string() + ": write failed");
    }
}

}  // namespace

StateSet load_state_set(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const int64_t dim = require_int(j, "dimension", path);
    if (dim < 1) {
        fail(path, "dimension: must be at least 1");
    }
    const json& states = require_field(j, "states", path);
    if (!states.is_array() || states.empty()) {
        fail(path, "states: expected a nonempty array");
    }
    std::vector<StateVector> parsed;
    parsed.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::ostringstream where;
        where << "states[" << i << "]";
        Vector v = read_vector(states[i], static_cast<Eigen::Index>(dim), where.str(), path);
        parsed.push_back(adopt_state(std::move(v), where.str(), path));
    }
    return StateSet(std::move(parsed));
}

void save_state_set(const StateSet& set, const std::filesystem::path& path) {
    json j;
    j["dimension"] = set.dim();
    json states = json::array();
    for (const StateVector& s : set) {
        states.push_back(write_vector(s.amplitudes()));
    }
    j["states"] = std::move(states);
    write_file(j, path);
}

CloningMachine load_machine(const std::filesystem::path& path) {
    const json j = parse_file(path);
    if (require_string(j, "format", path) != kMachineFormatTag) {
        fail(path, std::string("format: expected ") + kMachineFormatTag);
    }
    if (require_string(j, "index_convention", path) != kIndexConventionTag) {
        fail(path, std::string("index_convention: expected ") + kIndexConventionTag);
    }
    const int64_t system_dim = require_int(j, "system_dim", path);
    const int64_t copies = require_int(j, "copies", path);
    const int64_t n_states = require_int(j, "n_states", path);
    const int64_t probe_dim = require_int(j, "probe_dim", path);
    const int64_t fill = require_int(j, "fill_state_index", path);
    const double eta = require_number(j, "eta", path);
    if (system_dim < 1) {
        fail(path, "system_dim: must be at least 1");
    }
    if (copies < 2) {
        fail(path, "copies: must be at least 2");
    }
    if (n_states < 1) {
        fail(path, "n_states: must be at least 1");
    }
    if (probe_dim != n_states + 1) {
        fail(path, "probe_dim: must equal n_states + 1");
    }
    if (fill < 0 || fill >= system_dim) {
        fail(path, "fill_state_index: out of range");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(path, "eta: must lie in [0, 1]");
    }
    int64_t blank_dim = 1;
    for (int64_t k = 1; k < copies; ++k) {
        blank_dim *= system_dim;
        if (blank_dim > kMaxCompositeDim) {
            fail(path, "copies/system_dim: composite dimension exceeds the supported limit");
        }
    }
    const int64_t composite = blank_dim * system_dim * probe_dim;
    if (composite > kMaxCompositeDim) {
        fail(path, "copies/system_dim: composite dimension exceeds the supported limit");
    }

    Vector blank_amps = read_vector(require_field(j, "blank", path),
                                    static_cast<Eigen::Index>(blank_dim), "blank", path);
    StateVector blank = adopt_state(std::move(blank_amps), "blank", path);

    const json& states_json = require_field(j, "states", path);
    if (!states_json.is_array() || static_cast<int64_t>(states_json.size()) != n_states) {
        fail(path, "states: expected n_states state vectors");
    }
    std::vector<StateVector> states;
    states.reserve(states_json.size());
    for (std::size_t i = 0; i < states_json.size(); ++i) {
        std::ostringstream where;
        where << "states[" << i << "]";
        Vector v = read_vector(states_json[i], static_cast<Eigen::Index>(system_dim), where.str(),
                               path);
        states.push_back(adopt_state(std::move(v), where.str(), path));
    }

    Matrix constants = read_matrix(require_field(j, "constants", path),
                                   static_cast<Eigen::Index>(n_states),
                                   static_cast<Eigen::Index>(n_states), "constants", path);
    Matrix unitary = read_matrix(require_field(j, "unitary", path),
                                 static_cast<Eigen::Index>(composite),
                                 static_cast<Eigen::Index>(composite), "unitary", path);

    return CloningMachine{static_cast<int>(system_dim),
                          static_cast<int>(copies),
                          static_cast<int>(n_states),
                          static_cast<int>(probe_dim),
                          eta,
                          std::move(blank),
                          ConstantsMatrix{std::move(constants), eta},
                          std::move(unitary),
                          static_cast<int>(fill),
                          StateSet(std::move(states))};
}

void save_machine(const CloningMachine& machine, const std::filesystem::path& path) {
    json j;
    j["format"] = kMachineFormatTag;
    j["index_convention"] = kIndexConventionTag;
    j["system_dim"] = machine.system_dim;
    j["copies"] = machine.copies;
    j["n_states"] = machine.n_states;
    j["probe_dim"] = machine.probe_dim;
    j["eta"] = machine.eta;
    j["fill_state_index"] = machine.fill_state_index;
    j["blank"] = write_vector(machine.blank.amplitudes());
    json states = json::array();
    for (const StateVector& s : machine.states) {
        states.push_back(write_vector(s.amplitudes()));
    }
    j["states"] = std::move(states);
    j["constants"] = write_matrix(machine.constants.entries);
    j["unitary"] = write_matrix(machine.unitary);
    write_file(j, path);
}

}  // namespace probclone
