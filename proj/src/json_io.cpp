#include "symfield/json_io.hpp"

#include <charconv>

#include "symfield/errors.hpp"

namespace symfield {

using nlohmann::json;

json parse_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("malformed JSON");
    return j;
}

namespace {

int parse_int_key(const std::string& key, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc() || p != key.data() + key.size())
        throw validation_error(std::string(what) + ": key '" + key + "' is not an integer");
    return v;
}

}  // namespace

Partition partition_from_json(const json& j) {
    if (!j.is_array()) throw validation_error("partition: expected an array of blocks");
    int k = 0;
    std::vector<std::vector<int>> blocks;
    for (const auto& jb : j) {
        if (!jb.is_array()) throw validation_error("partition: blocks must be arrays");
        std::vector<int> b;
        for (const auto& jl : jb) {
            if (!jl.is_number_integer()) throw validation_error("partition: labels must be integers");
            int l = jl.get<int>();
            b.push_back(l);
            k = std::max(k, l > 0 ? l : -l);
        }
        blocks.push_back(std::move(b));
    }
    return Partition(k, std::move(blocks));
}

json partition_to_json(const Partition& p) {
    json j = json::array();
    for (const auto& b : p.blocks()) j.push_back(b);
    return j;
}

FiniteClass finite_class_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("class: expected an object");
    FiniteClass c;
    if (!j.contains("N") || !j["N"].is_number_integer())
        throw validation_error("class: need integer field N");
    c.N = j["N"].get<long long>();
    if (!j.contains("cycles") || !j["cycles"].is_object())
        throw validation_error("class: need object field cycles");
    for (const auto& [key, val] : j["cycles"].items()) {
        if (!val.is_number_integer())
            throw validation_error("class: cycle point counts must be integers");
        c.cycles[parse_int_key(key, "class")] = val.get<long long>();
    }
    for (const auto& [key, val] : j.items())
        if (key != "N" && key != "cycles")
            throw validation_error("class: unknown field '" + key + "'");
    c.validate();
    return c;
}

json finite_class_to_json(const FiniteClass& c) {
    json cycles = json::object();
    for (auto [i, pts] : c.cycles) cycles[std::to_string(i)] = pts;
    return json{{"N", c.N}, {"cycles", cycles}};
}

LimitClass limit_class_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("limit class: expected an object");
    LimitClass lc;
    if (j.contains("alpha")) {
        if (!j["alpha"].is_number()) throw validation_error("limit class: alpha must be a number");
        lc.alpha = j["alpha"].get<double>();
    }
    if (j.contains("lambda")) {
        if (!j["lambda"].is_object())
            throw validation_error("limit class: lambda must be an object");
        for (const auto& [key, val] : j["lambda"].items()) {
            if (!val.is_number()) throw validation_error("limit class: weights must be numbers");
            lc.lambda[parse_int_key(key, "limit class")] = val.get<double>();
        }
    }
    if (j.contains("truncation")) {
        if (!j["truncation"].is_number_integer())
            throw validation_error("limit class: truncation must be an integer");
        lc.truncation = j["truncation"].get<int>();
    }
    for (const auto& [key, val] : j.items())
        if (key != "alpha" && key != "lambda" && key != "truncation")
            throw validation_error("limit class: unknown field '" + key + "'");
    lc.validate();
    return lc;
}

json limit_class_to_json(const LimitClass& lc) {
    json lambda = json::object();
    for (auto [i, w] : lc.lambda) lambda[std::to_string(i)] = w;
    json j{{"alpha", lc.alpha}, {"lambda", lambda}};
    if (lc.truncation > 0) j["truncation"] = lc.truncation;
    return j;
}

LassoWord lasso_word_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("word: expected an object");
    LassoWord w;
    if (!j.contains("areas") || !j["areas"].is_object())
        throw validation_error("word: need object field areas");
    for (const auto& [key, val] : j["areas"].items()) {
        if (!val.is_number()) throw validation_error("word: areas must be numbers");
        w.areas[key] = val.get<double>();
    }
    if (!j.contains("word") || !j["word"].is_array())
        throw validation_error("word: need array field word");
    for (const auto& jl : j["word"]) {
        if (!jl.is_array() || jl.size() != 2 || !jl[0].is_string() ||
            !jl[1].is_number_integer())
            throw validation_error("word: letters are [face, exponent] pairs");
        w.word.push_back({jl[0].get<std::string>(), jl[1].get<int>()});
    }
    if (j.contains("class")) w.cls = limit_class_from_json(j["class"]);
    for (const auto& [key, val] : j.items())
        if (key != "areas" && key != "word" && key != "class")
            throw validation_error("word: unknown field '" + key + "'");
    w.validate();
    return w;
}

json lasso_word_to_json(const LassoWord& w) {
    json areas = json::object();
    for (const auto& [face, a] : w.areas) areas[face] = a;
    json letters = json::array();
    for (const Letter& l : w.word) letters.push_back(json::array({l.face, l.exponent}));
    return json{{"areas", areas}, {"word", letters}, {"class", limit_class_to_json(w.cls)}};
}

LoopGeometry loop_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("loop: expected an object");
    if (j.contains("vertices")) {
        if (!j["vertices"].is_array())
            throw validation_error("loop: vertices must be an array of [x, y] pairs");
        Polygon poly;
        for (const auto& jv : j["vertices"]) {
            if (!jv.is_array() || jv.size() != 2 || !jv[0].is_number() || !jv[1].is_number())
                throw validation_error("loop: vertices must be [x, y] pairs");
            poly.vertices.emplace_back(jv[0].get<double>(), jv[1].get<double>());
        }
        for (const auto& [key, val] : j.items())
            if (key != "vertices") throw validation_error("loop: unknown field '" + key + "'");
        poly.validate();
        return poly;
    }
    return lasso_word_from_json(j);
}

json estimate_to_json(const Estimate& e) {
    return json{{"mean", e.mean},
                {"std_error", e.std_error},
                {"variance", e.variance},
                {"samples", e.samples}};
}

std::string cycle_type_string(const std::vector<int>& type) {
    std::string s;
    for (std::size_t i = 0; i < type.size(); ++i) {
        if (i) s += "+";
        s += std::to_string(type[i]);
    }
    return s;
}

}  // namespace symfield
