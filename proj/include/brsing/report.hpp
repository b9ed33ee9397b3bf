#pragma once

#include <nlohmann/json.hpp>

#include "submodule.hpp"

namespace brsing {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

/// ColengthResult as JSON: an exact integer, or the string "infinite".
inline Json to_json(const ColengthResult& c) {
    if (c.finite) return Json(c.value);
    return Json("infinite");
}

inline Json to_json(const SubModule& M) {
    Json gens = Json::array();
    for (const auto& g : M.generators()) {
        if (M.rank() == 1) {
            gens.push_back(g[0].to_string());
        } else {
            Json v = Json::array();
            for (int c = 0; c < g.rank(); ++c) v.push_back(g[c].to_string());
            gens.push_back(std::move(v));
        }
    }
    return gens;
}

/// Accumulates one run's report. Every value is exact; timings live in a
/// dedicated key so determinism checks can strip them.
class Report {
public:
    Report(std::uint64_t seed, int samples) {
        json_["version"] = kToolVersion;
        json_["input"] = Json::object();
        json_["results"] = Json::object();
        json_["certificates"] = Json::object();
        json_["seed"] = seed;
        json_["samples"] = samples;
        json_["timing_ms"] = Json::object();
        json_["caps"] = Json::array();
    }

    void input(const std::string& key, Json value) { json_["input"][key] = std::move(value); }
    void result(const std::string& key, Json value) { json_["results"][key] = std::move(value); }
    void certificate(const std::string& key, Json value) {
        json_["certificates"][key] = std::move(value);
    }
    void timing(const std::string& key, double ms) { json_["timing_ms"][key] = ms; }
    void cap_event(const std::string& what) { json_["caps"].push_back(what); }

    const Json& json() const { return json_; }
    std::string dump() const { return json_.dump(2) + "\n"; }

    /// Copy with timings removed, for byte-determinism comparisons.
    Json without_timing() const {
        Json j = json_;
        j.erase("timing_ms");
        return j;
    }

private:
    Json json_;
};

}  // namespace brsing
