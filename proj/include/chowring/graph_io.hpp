#pragma once

// Graph files: a JSON object with "vertices" (ordered string labels) and
// "edges" (ascending index pairs). write_graph emits one canonical byte
// layout, so read/write round trips are byte-exact for canonical input.

#include <filesystem>
#include <string>
#include <string_view>

#include "chowring/simplicial.hpp"

namespace chowring {

OrderedGraph read_graph(std::string_view text);
std::string write_graph(const OrderedGraph& g);

OrderedGraph load_graph(const std::filesystem::path& path);
void save_graph(const OrderedGraph& g, const std::filesystem::path& path);

}  // namespace chowring
