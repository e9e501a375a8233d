#include "bethe/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace bethe {

namespace {

using nlohmann::json;

cplx read_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput(std::string("config: ") + what + " must be an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> read_complex_list(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string("config: ") + what + " must be a list of [re, im] pairs");
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(read_complex(e, what));
    return out;
}

int read_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InvalidInput(std::string("config: missing integer '") + key + "'");
    return j[key].get<int>();
}

json complex_hex(cplx z) { return json::array({hex_double(z.real()), hex_double(z.imag())}); }

cplx complex_from_hex(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidInput("circuit: complex entry must be a pair");
    return {parse_hex_double(j[0].get<std::string>()), parse_hex_double(j[1].get<std::string>())};
}

} // namespace

std::string hex_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::hex);
    return std::string(buf, res.ptr);
}

double parse_hex_double(const std::string& s) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    bool neg = false;
    if (first != last && *first == '-') {
        neg = true;
        ++first;
    }
    const auto res = std::from_chars(first, last, x, std::chars_format::hex);
    if (res.ec != std::errc{} || res.ptr != last) throw InvalidInput("circuit: bad hex float '" + s + "'");
    return neg ? -x : x;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("config: parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("config: top level must be an object");
    RunConfig cfg;
    auto& s = cfg.spec;
    s.n_sites = read_int(j, "n_sites");
    s.n_magnons = read_int(j, "n_magnons");
    if (!j.contains("gamma")) throw InvalidInput("config: missing 'gamma'");
    s.gamma = read_complex(j["gamma"], "gamma");
    if (j.contains("inhomogeneities"))
        s.inhomogeneities = read_complex_list(j["inhomogeneities"], "inhomogeneities");
    else if (s.n_sites > 0)
        s.inhomogeneities.assign(static_cast<std::size_t>(s.n_sites), cplx{0.0, 0.0});
    if (!j.contains("rapidities")) throw InvalidInput("config: missing 'rapidities'");
    s.rapidities = read_complex_list(j["rapidities"], "rapidities");
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw InvalidInput("config: 'tolerances' must be an object");
        if (t.contains("pole")) s.tol.pole = t["pole"].get<double>();
        if (t.contains("separation")) s.tol.separation = t["separation"].get<double>();
        if (t.contains("check")) cfg.check_tol = t["check"].get<double>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw InvalidInput("config: 'seed' must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    s.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string export_circuit(const Circuit& circuit, const ChainSpec& spec) {
    json body;
    body["tool_version"] = tool_version;
    body["conventions"] = {{"qubit_order", "qubit 0 is the most significant bit"},
                           {"gate_order", "applied in list order"},
                           {"matrix_order", "row-major, rows are outputs"},
                           {"completion", "gram-schmidt over canonical vectors in chi order"}};
    body["n_sites"] = spec.n_sites;
    body["n_magnons"] = spec.n_magnons;
    body["gamma"] = complex_hex(spec.gamma);
    body["inhomogeneities"] = json::array();
    for (auto v : spec.inhomogeneities) body["inhomogeneities"].push_back(complex_hex(v));
    body["rapidities"] = json::array();
    for (auto u : spec.rapidities) body["rapidities"].push_back(complex_hex(u));
    std::string bits;
    for (int b : circuit.initial) bits += b ? '1' : '0';
    body["initial"] = bits;
    body["gates"] = json::array();
    for (const auto& g : circuit.gates) {
        json e;
        e["site"] = g.site;
        e["kind"] = g.kind == GateKind::long_gate ? "long" : "short";
        e["window"] = g.window;
        e["dim"] = g.matrix.rows();
        json entries = json::array();
        for (Eigen::Index r = 0; r < g.matrix.rows(); ++r)
            for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) entries.push_back(complex_hex(g.matrix(r, c)));
        e["entries"] = std::move(entries);
        body["gates"].push_back(std::move(e));
    }
    return std::string(export_header) + "\n" + body.dump(1) + "\n";
}

ImportedCircuit import_circuit(const std::string& text) {
    const auto nl = text.find('\n');
    if (nl == std::string::npos || text.substr(0, nl) != export_header)
        throw InvalidInput("circuit: missing '" + std::string(export_header) + "' header");
    json j;
    try {
        j = json::parse(text.substr(nl + 1));
        ImportedCircuit out;
        auto& s = out.spec;
        s.n_sites = j.at("n_sites").get<int>();
        s.n_magnons = j.at("n_magnons").get<int>();
        s.gamma = complex_from_hex(j.at("gamma"));
        for (const auto& v : j.at("inhomogeneities")) s.inhomogeneities.push_back(complex_from_hex(v));
        for (const auto& u : j.at("rapidities")) s.rapidities.push_back(complex_from_hex(u));
        auto& c = out.circuit;
        c.n_qubits = s.n_sites;
        for (char ch : j.at("initial").get<std::string>()) {
            if (ch != '0' && ch != '1') throw InvalidInput("circuit: initial bitstring");
            c.initial.push_back(ch - '0');
        }
        for (const auto& e : j.at("gates")) {
            CircuitUnitary g;
            g.site = e.at("site").get<int>();
            const auto kind = e.at("kind").get<std::string>();
            if (kind != "long" && kind != "short") throw InvalidInput("circuit: unknown gate kind '" + kind + "'");
            g.kind = kind == "long" ? GateKind::long_gate : GateKind::short_gate;
            g.window = e.at("window").get<std::vector<int>>();
            const auto dim = e.at("dim").get<Eigen::Index>();
            if (dim != (Eigen::Index{1} << g.window.size())) throw InvalidInput("circuit: gate dimension does not match window");
            const auto& entries = e.at("entries");
            if (static_cast<Eigen::Index>(entries.size()) != dim * dim) throw InvalidInput("circuit: wrong entry count");
            g.matrix.resize(dim, dim);
            std::size_t p = 0;
            for (Eigen::Index r = 0; r < dim; ++r)
                for (Eigen::Index col = 0; col < dim; ++col) g.matrix(r, col) = complex_from_hex(entries[p++]);
            c.gates.push_back(std::move(g));
        }
        return out;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("circuit: ") + e.what());
    }
}

} // namespace bethe
