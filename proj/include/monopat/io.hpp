#pragma once

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "monopat/constants.hpp"
#include "monopat/generators.hpp"
#include "monopat/structure.hpp"
#include "monopat/view.hpp"

namespace monopat {

/// Sequence files: ".txt" holds one decimal value per line, ".f64" holds
/// little-endian IEEE-754 doubles with no header. The loader picks the codec
/// from the extension.

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::vector<Value> load_sequence(const std::string& path) {
    std::vector<Value> out;
    if (has_suffix(path, ".f64")) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        if (bytes.size() % 8 != 0)
            throw std::runtime_error(path + ": length is not a multiple of 8 bytes");
        out.resize(bytes.size() / 8);
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::uint64_t bits = 0;
            for (int b = 7; b >= 0; --b)
                bits = (bits << 8) | static_cast<unsigned char>(bytes[i * 8 + static_cast<std::size_t>(b)]);
            double v;
            std::memcpy(&v, &bits, 8);
            out[i] = v;
        }
        return out;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0;
        bool ok = true;
        try {
            v = std::stod(line, &used);
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok && line.find_first_not_of(" \t\r", used) != std::string::npos) ok = false;
        if (!ok)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not a number");
        out.push_back(v);
    }
    return out;
}

inline void save_sequence(const std::string& path, const std::vector<Value>& values) {
    if (has_suffix(path, ".f64")) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (double v : values) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            char bytes[8];
            for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
            out.write(bytes, 8);
        }
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[64];
    for (double v : values) {
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, res.ptr - buf);
        out.put('\n');
    }
}

inline AlgorithmConstants constants_from_json(const nlohmann::json& j) {
    AlgorithmConstants c;
    auto get = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    get("c1", c.c1);
    get("c2", c.c2);
    get("p_shift", c.p_shift);
    get("p_degree", c.p_degree);
    get("suffix_scale_multiplier", c.suffix_scale_multiplier);
    get("suffix_rep_multiplier", c.suffix_rep_multiplier);
    get("query_budget_factor", c.query_budget_factor);
    get("suffix_budget_share", c.suffix_budget_share);
    get("recursion_budget_factor", c.recursion_budget_factor);
    get("split_call_budget_factor", c.split_call_budget_factor);
    if (j.contains("split_eps_uses_k5")) c.split_eps_uses_k5 = j.at("split_eps_uses_k5").get<bool>();
    c.validate();
    return c;
}

inline nlohmann::json constants_to_json(const AlgorithmConstants& c) {
    return nlohmann::json{{"c1", c.c1},
                          {"c2", c.c2},
                          {"p_shift", c.p_shift},
                          {"p_degree", c.p_degree},
                          {"suffix_scale_multiplier", c.suffix_scale_multiplier},
                          {"suffix_rep_multiplier", c.suffix_rep_multiplier},
                          {"split_eps_uses_k5", c.split_eps_uses_k5},
                          {"query_budget_factor", c.query_budget_factor},
                          {"suffix_budget_share", c.suffix_budget_share},
                          {"recursion_budget_factor", c.recursion_budget_factor},
                          {"split_call_budget_factor", c.split_call_budget_factor}};
}

inline AlgorithmConstants load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return constants_from_json(j);
}

inline nlohmann::json witness_to_json(const PatternWitness& w) {
    return nlohmann::json{{"indices", w.indices}, {"values", w.values}};
}

inline PatternWitness witness_from_json(const nlohmann::json& j) {
    PatternWitness w;
    w.indices = j.at("indices").get<std::vector<Index>>();
    if (j.contains("values")) w.values = j.at("values").get<std::vector<Value>>();
    return w;
}

inline nlohmann::json certificate_to_json(const InstanceSpec& spec,
                                          const CertifiedInstance& inst) {
    nlohmann::json j{{"style", to_string(spec.style)},
                     {"n", spec.n},
                     {"k", spec.k},
                     {"eps", spec.eps},
                     {"seed", spec.seed}};
    if (inst.is_far()) {
        auto family = nlohmann::json::array();
        for (const auto& w : inst.family.tuples) family.push_back(w.indices);
        j["family"] = family;
    } else {
        j["free_proof"] = inst.free_proof;
    }
    return j;
}

inline nlohmann::json growing_suffix_cert_to_json(const GrowingSuffixCert& c) {
    return nlohmann::json{{"start", c.start},
                          {"scale_sets", c.scale_sets},
                          {"alpha", c.alpha},
                          {"beta", c.beta}};
}

inline GrowingSuffixCert growing_suffix_cert_from_json(const nlohmann::json& j) {
    GrowingSuffixCert c;
    c.start = j.at("start").get<Index>();
    c.scale_sets = j.at("scale_sets").get<std::vector<std::vector<Index>>>();
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    return c;
}

inline nlohmann::json splittable_cert_to_json(const SplittableCert& c) {
    auto tuples = nlohmann::json::array();
    for (const auto& w : c.tuples.tuples) tuples.push_back(w.indices);
    return nlohmann::json{{"interval", {c.interval.lo, c.interval.hi}},
                          {"tuples", tuples},
                          {"split_index", c.split_index},
                          {"left", {c.left.lo, c.left.hi}},
                          {"middle", {c.middle.lo, c.middle.hi}},
                          {"right", {c.right.lo, c.right.hi}},
                          {"alpha", c.alpha},
                          {"beta", c.beta}};
}

inline SplittableCert splittable_cert_from_json(const nlohmann::json& j,
                                                const std::vector<Value>& seq) {
    SplittableCert c;
    auto iv = [&](const char* key) {
        auto arr = j.at(key);
        return IndexInterval{arr.at(0).get<Index>(), arr.at(1).get<Index>()};
    };
    c.interval = iv("interval");
    c.left = iv("left");
    c.middle = iv("middle");
    c.right = iv("right");
    c.split_index = j.at("split_index").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    for (const auto& t : j.at("tuples")) {
        PatternWitness w;
        w.indices = t.get<std::vector<Index>>();
        for (Index i : w.indices)
            if (i >= 0 && i < static_cast<Index>(seq.size()))
                w.values.push_back(seq[static_cast<std::size_t>(i)]);
        c.tuples.tuples.push_back(std::move(w));
    }
    return c;
}

}  // namespace monopat
