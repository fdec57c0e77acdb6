#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "agemap/aging.hpp"
#include "agemap/pareto.hpp"

namespace agemap
{

// Shortest round-trip decimal form; "inf" for infinity.
std::string format_double(double x);

// JSON number, or null when not finite.
nlohmann::json json_number(double x);

nlohmann::json to_json(const Mapping& m);
nlohmann::json to_json(const AgingReport& r);
nlohmann::json to_json(const ParetoFront& f);

// One row per neuron: tile,neuron,tddb,nbti,hci,overall
std::string report_csv(const AgingReport& r);
// hash,assignment,tau,aging,lambda,iteration
std::string archive_csv(std::span<const ArchiveEntry> archive);
// tau,aging,assignment
std::string front_csv(const ParetoFront& f);

std::string mapping_hash(const Mapping& m);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

} // namespace agemap
