#pragma once

#include "sbc/core.hpp"

#include <string>
#include <vector>

namespace sbc::support
{

std::string data_path(const std::string & name);
std::string read_text(const std::string & path);

// Parses a model file under the test data directory; throws on diagnostics.
SystemItg load_model(const std::string & name);

inline SystemItg oss() { return load_model("oss.sbc"); }
inline SystemItg itg01() { return load_model("itg01.sbc"); }

// The online shopping system transition table, one row per transition:
// {REGION, S1, N, XI, LAMBDA, THETA, GAMMA, S2}.
const std::vector<std::vector<std::string>> & oss_table();

// The published class view, in its printed row order: {C, LAMBDA, THETA}.
const std::vector<std::vector<std::string>> & printed_class_table();

}  // namespace sbc::support
