#include "agemap/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agemap
{

using nlohmann::json;

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), end);
}

json json_number(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

std::string mapping_hash(const Mapping& m)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(MappingHash{}(m)));
    return buf;
}

json to_json(const Mapping& m)
{
    return json(m.assignment);
}

json to_json(const AgingReport& r)
{
    json neurons = json::array();
    for (const auto& n : r.per_neuron) {
        neurons.push_back({{"tile", n.tile},
                           {"neuron", n.neuron},
                           {"tddb", n.aging.tddb},
                           {"nbti", n.aging.nbti},
                           {"hci", n.aging.hci},
                           {"overall", n.aging.overall}});
    }
    return json{{"per_neuron", neurons},
                {"per_tile", r.per_tile},
                {"hardware", r.hardware},
                {"mttf_seconds", json_number(r.mttf)}};
}

json to_json(const ParetoFront& f)
{
    json pts = json::array();
    for (const auto& p : f.points) {
        pts.push_back({{"tau", p.tau}, {"aging", p.aging}, {"mapping", p.mapping.assignment}});
    }
    return json{{"points", pts}};
}

std::string report_csv(const AgingReport& r)
{
    std::ostringstream os;
    os << "tile,neuron,tddb,nbti,hci,overall\n";
    for (const auto& n : r.per_neuron) {
        os << n.tile << ',' << n.neuron << ',' << format_double(n.aging.tddb) << ',' << format_double(n.aging.nbti)
           << ',' << format_double(n.aging.hci) << ',' << format_double(n.aging.overall) << '\n';
    }
    return os.str();
}

std::string archive_csv(std::span<const ArchiveEntry> archive)
{
    std::ostringstream os;
    os << "hash,assignment,tau,aging,lambda,iteration\n";
    for (const auto& e : archive) {
        os << mapping_hash(e.mapping) << ',' << e.mapping.to_string() << ',' << format_double(e.fitness.tau) << ','
           << format_double(e.fitness.aging) << ',' << format_double(e.fitness.lambda) << ',' << e.iteration << '\n';
    }
    return os.str();
}

std::string front_csv(const ParetoFront& f)
{
    std::ostringstream os;
    os << "tau,aging,assignment\n";
    for (const auto& p : f.points) {
        os << format_double(p.tau) << ',' << format_double(p.aging) << ',' << p.mapping.to_string() << '\n';
    }
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

void write_json(const std::filesystem::path& path, const json& doc)
{
    write_text(path, doc.dump(2) + "\n");
}

} // namespace agemap
