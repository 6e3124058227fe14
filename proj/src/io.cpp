#include "galign/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace galign {
namespace {

constexpr std::string_view kDatasetMagic = "galign-dataset";
constexpr int kDatasetVersion = 1;

/// Line cursor over a text buffer; tracks line numbers for error messages.
class LineReader {
public:
    explicit LineReader(const std::string& text) : text_(text) {}

    /// Next line verbatim; false at end of input.
    bool next(std::string& line) {
        if (pos_ >= text_.size())
            return false;
        const auto nl = text_.find('\n', pos_);
        if (nl == std::string::npos) {
            line = text_.substr(pos_);
            pos_ = text_.size();
        } else {
            line = text_.substr(pos_, nl - pos_);
            pos_ = nl + 1;
        }
        ++line_no_;
        return true;
    }

    /// Next non-blank, non-comment line.
    bool next_content(std::string& line) {
        while (next(line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
                continue;
            return true;
        }
        return false;
    }

    int line_no() const { return line_no_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

long long parse_int(const std::string& s, int line_no) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected integer, got '" + s + "'");
    return value;
}

std::uint64_t parse_u64(const std::string& s, int line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected unsigned integer, got '" + s + "'");
    return value;
}

void append_graph(std::string& out, const Graph& g, std::string_view tag, bool with_n) {
    out += tag;
    if (with_n) {
        out += ' ';
        out += std::to_string(g.vertex_count());
    }
    out += ' ';
    out += std::to_string(g.edge_count());
    out += '\n';
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
}

/// Reads m edge lines; dedups or rejects duplicates per opts.
Graph read_edges(LineReader& reader, int n, long long m, const ImportOptions& opts,
                 std::vector<std::string>* warnings) {
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (m > max_edges)
        throw parse_error("line " + std::to_string(reader.line_no()) + ": edge count " +
                          std::to_string(m) + " exceeds the simple-graph maximum " +
                          std::to_string(max_edges) + " for n=" + std::to_string(n));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::string line;
    for (long long i = 0; i < m; ++i) {
        if (!reader.next_content(line))
            throw parse_error("line " + std::to_string(reader.line_no()) +
                              ": unexpected end of input, expected edge " + std::to_string(i + 1) +
                              " of " + std::to_string(m));
        const auto toks = split_ws(line);
        if (toks.size() != 2)
            throw parse_error("line " + std::to_string(reader.line_no()) +
                              ": expected 'u v', got '" + line + "'");
        int u = static_cast<int>(parse_int(toks[0], reader.line_no()));
        int v = static_cast<int>(parse_int(toks[1], reader.line_no()));
        if (u == v)
            throw parse_error("line " + std::to_string(reader.line_no()) + ": self-loop " +
                              std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= n)
            throw parse_error("line " + std::to_string(reader.line_no()) + ": edge (" +
                              std::to_string(u) + "," + std::to_string(v) +
                              ") out of range for n=" + std::to_string(n));
        edges.push_back({u, v});
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        if (opts.strict)
            throw parse_error("duplicate edge (" + std::to_string(dup->u) + "," +
                              std::to_string(dup->v) + ") before line " +
                              std::to_string(reader.line_no()));
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (warnings)
            warnings->push_back("duplicate edges deduplicated before line " +
                                std::to_string(reader.line_no()));
    }
    return Graph(n, std::move(edges));
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc())
        throw numeric_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& s, int line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected number, got '" + s + "'");
    return value;
}

Corpus parse_edgelist(const std::string& text, ImportOptions opts) {
    Corpus corpus;
    LineReader reader(text);
    std::string line;
    while (reader.next_content(line)) {
        const auto toks = split_ws(line);
        if (toks.size() != 3 || toks[0] != "graph")
            throw parse_error("line " + std::to_string(reader.line_no()) +
                              ": expected 'graph <n> <m>', got '" + line + "'");
        const int n = static_cast<int>(parse_int(toks[1], reader.line_no()));
        const long long m = parse_int(toks[2], reader.line_no());
        if (n < 0 || m < 0)
            throw parse_error("line " + std::to_string(reader.line_no()) + ": negative counts");
        try {
            corpus.graphs.push_back(read_edges(reader, n, m, opts, &corpus.warnings));
        } catch (const argument_error& e) {
            throw validation_error("graph " + std::to_string(corpus.graphs.size()) + ": " + e.what());
        }
    }
    return corpus;
}

Corpus import_edgelist(const std::filesystem::path& path, ImportOptions opts) {
    return parse_edgelist(read_file(path), opts);
}

std::string corpus_to_string(std::span<const Graph> graphs) {
    std::string out;
    for (const auto& g : graphs)
        append_graph(out, g, "graph", true);
    return out;
}

void save_corpus(const std::filesystem::path& path, std::span<const Graph> graphs) {
    write_file(path, corpus_to_string(graphs));
}

std::string dataset_to_string(const AlignmentDataset& ds) {
    std::string out;
    out += kDatasetMagic;
    out += ' ';
    out += std::to_string(kDatasetVersion);
    out += '\n';
    out += "name " + ds.meta.name + '\n';
    out += "eta " + format_double(ds.meta.eta) + '\n';
    out += "mode ";
    out += to_string(ds.meta.mode);
    out += '\n';
    out += "master-seed " + std::to_string(ds.meta.master_seed) + '\n';
    out += "split " + ds.meta.split + '\n';
    out += "count " + std::to_string(ds.samples.size()) + '\n';
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        const auto& s = ds.samples[i];
        out += "sample " + std::to_string(i) + ' ' + std::to_string(s.seed) + ' ' +
               std::to_string(s.base.vertex_count()) + '\n';
        append_graph(out, s.base, "base", false);
        append_graph(out, s.noisy, "noisy", false);
        out += "truth";
        for (int x : s.truth.map()) {
            out += ' ';
            out += std::to_string(x);
        }
        out += '\n';
    }
    return out;
}

AlignmentDataset dataset_from_string(const std::string& text) {
    LineReader reader(text);
    std::string line;

    auto expect_kv = [&](std::string_view key) -> std::vector<std::string> {
        if (!reader.next_content(line))
            throw parse_error("line " + std::to_string(reader.line_no()) +
                              ": unexpected end of input, expected '" + std::string(key) + "'");
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] != key)
            throw parse_error("line " + std::to_string(reader.line_no()) + ": expected '" +
                              std::string(key) + "', got '" + line + "'");
        return toks;
    };

    auto header = expect_kv(kDatasetMagic);
    if (header.size() != 2 || parse_int(header[1], reader.line_no()) != kDatasetVersion)
        throw parse_error("line " + std::to_string(reader.line_no()) +
                          ": unsupported dataset version");

    AlignmentDataset ds;
    auto name = expect_kv("name");
    ds.meta.name = name.size() > 1 ? name[1] : "";
    ds.meta.eta = parse_double(expect_kv("eta").at(1), reader.line_no());
    ds.meta.mode = noise_mode_from_string(expect_kv("mode").at(1));
    ds.meta.master_seed = parse_u64(expect_kv("master-seed").at(1), reader.line_no());
    ds.meta.split = expect_kv("split").at(1);
    const long long count = parse_int(expect_kv("count").at(1), reader.line_no());
    if (count < 0)
        throw parse_error("line " + std::to_string(reader.line_no()) + ": negative count");

    ds.samples.reserve(static_cast<std::size_t>(std::min<long long>(count, 65536)));
    for (long long i = 0; i < count; ++i) {
        auto sample_line = expect_kv("sample");
        if (sample_line.size() != 4)
            throw parse_error("line " + std::to_string(reader.line_no()) +
                              ": expected 'sample <idx> <seed> <n>'");
        const long long idx = parse_int(sample_line[1], reader.line_no());
        if (idx != i)
            throw parse_error("line " + std::to_string(reader.line_no()) + ": sample index " +
                              std::to_string(idx) + " out of order, expected " + std::to_string(i));
        AlignmentSample s;
        s.seed = parse_u64(sample_line[2], reader.line_no());
        s.eta = ds.meta.eta;
        const int n = static_cast<int>(parse_int(sample_line[3], reader.line_no()));

        auto read_tagged_graph = [&](std::string_view tag) -> Graph {
            auto toks = expect_kv(tag);
            if (toks.size() != 2)
                throw parse_error("line " + std::to_string(reader.line_no()) + ": expected '" +
                                  std::string(tag) + " <m>'");
            const long long m = parse_int(toks[1], reader.line_no());
            try {
                return read_edges(reader, n, m, {.strict = true}, nullptr);
            } catch (const parse_error& e) {
                throw validation_error("sample " + std::to_string(i) + ": " + e.what());
            } catch (const argument_error& e) {
                throw validation_error("sample " + std::to_string(i) + ": " + e.what());
            }
        };
        s.base = read_tagged_graph("base");
        s.noisy = read_tagged_graph("noisy");

        auto truth_toks = expect_kv("truth");
        if (static_cast<int>(truth_toks.size()) != n + 1)
            throw validation_error("sample " + std::to_string(i) + ": truth length " +
                                   std::to_string(truth_toks.size() - 1) + " != n=" +
                                   std::to_string(n));
        std::vector<int> map;
        map.reserve(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k)
            map.push_back(static_cast<int>(parse_int(truth_toks[static_cast<std::size_t>(k)],
                                                     reader.line_no())));
        try {
            s.truth = Permutation(std::move(map));
        } catch (const argument_error& e) {
            throw validation_error("sample " + std::to_string(i) + ": " + e.what());
        }
        ds.samples.push_back(std::move(s));
    }
    if (reader.next_content(line))
        throw parse_error("line " + std::to_string(reader.line_no()) +
                          ": trailing content after last sample");
    return ds;
}

void save_dataset(const std::filesystem::path& path, const AlignmentDataset& ds) {
    write_file(path, dataset_to_string(ds));
}

AlignmentDataset load_dataset(const std::filesystem::path& path) {
    return dataset_from_string(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw io_error("write failed for " + path.string());
}

} // namespace galign
