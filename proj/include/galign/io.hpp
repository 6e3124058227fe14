#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "galign/generate.hpp"
#include "galign/graph.hpp"

namespace galign {

/// Shortest round-trip decimal form (std::to_chars); canonical across runs.
std::string format_double(double x);
double parse_double(const std::string& s, int line_no);

struct ImportOptions {
    bool strict = false; // strict: duplicate edges are a parse error
};

struct Corpus {
    std::vector<Graph> graphs;
    std::vector<std::string> warnings;
};

/// Corpus text format: per graph a header "graph <n> <m>" followed by m
/// lines "u v"; blank lines and lines starting with '#' are skipped.
/// Duplicate edges are deduplicated with a warning unless strict.
Corpus import_edgelist(const std::filesystem::path& path, ImportOptions opts = {});
Corpus parse_edgelist(const std::string& text, ImportOptions opts = {});

void save_corpus(const std::filesystem::path& path, std::span<const Graph> graphs);
std::string corpus_to_string(std::span<const Graph> graphs);

/// Dataset text format, line oriented and canonical (sorted edges, single
/// spaces, '\n' endings) so files from equal inputs are byte-identical.
std::string dataset_to_string(const AlignmentDataset& ds);
AlignmentDataset dataset_from_string(const std::string& text);

void save_dataset(const std::filesystem::path& path, const AlignmentDataset& ds);
AlignmentDataset load_dataset(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace galign
