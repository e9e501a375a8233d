#pragma once

#include "bethe/kernel.hpp"
#include "bethe/synth.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace bethe {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* export_header = "bethe-circuit v1";

struct RunConfig {
    ChainSpec spec;
    std::optional<double> check_tol; // overrides every check tolerance when set
    std::uint64_t seed = 1;
    std::string out;
};

/// JSON config; complex numbers are [re, im] pairs. Throws InvalidInput.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Versioned header line followed by a JSON body; doubles as hex-float strings.
std::string export_circuit(const Circuit& circuit, const ChainSpec& spec);

struct ImportedCircuit {
    Circuit circuit;
    ChainSpec spec;
};
ImportedCircuit import_circuit(const std::string& text);

std::string hex_double(double x);
double parse_hex_double(const std::string& s);

} // namespace bethe
