#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"

namespace mmc {

enum class GraphFormat { PaceGr, Dimacs, EdgeList };

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Graph parse_graph(std::string_view text, GraphFormat format);
GraphFormat format_from_name(const std::string& name);  // "pace-gr", "dimacs", "edge-list"
GraphFormat guess_format(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

std::string write_pace(const Graph& g);
// "part i: v1 v2 ..." lines, 1-based.
std::string multicut_text(const Multicut& mc);
// {"parts":[[...]],"cut_edges":[[u,v],...]} on one line, 1-based ids.
std::string multicut_json(const Multicut& mc);

}  // namespace mmc
