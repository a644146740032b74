#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "symfield/classes.hpp"
#include "symfield/covering.hpp"
#include "symfield/master.hpp"
#include "symfield/partition.hpp"

namespace symfield {

// JSON forms (all validation errors surface as validation_error):
//   partition     [[1,-2],[2,-1]]
//   finite class  {"N": 100, "cycles": {"2": 2}}
//   limit class   {"alpha": 0.0, "lambda": {"2": 1.0}, "truncation": 0}
//   word          {"areas": {"a": 0.3}, "word": [["a", 1]], "class": <limit class>}
//   loop          polygon {"vertices": [[x, y], ...]} or a word object

nlohmann::json parse_json(std::string_view text);  // wraps parse errors

Partition partition_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const Partition& p);

FiniteClass finite_class_from_json(const nlohmann::json& j);
nlohmann::json finite_class_to_json(const FiniteClass& c);

LimitClass limit_class_from_json(const nlohmann::json& j);
nlohmann::json limit_class_to_json(const LimitClass& lc);

LassoWord lasso_word_from_json(const nlohmann::json& j);
nlohmann::json lasso_word_to_json(const LassoWord& w);

LoopGeometry loop_from_json(const nlohmann::json& j);

nlohmann::json estimate_to_json(const Estimate& e);

// Cycle types render as "3+1+1".
std::string cycle_type_string(const std::vector<int>& type);

}  // namespace symfield
