#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "galign/generate.hpp"
#include "galign/io.hpp"

using namespace galign;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "galign-io-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("edgelist: header plus edges parses to the path graph") {
    const auto corpus = parse_edgelist("graph 3 2\n0 1\n1 2\n");
    REQUIRE(corpus.graphs.size() == 1);
    CHECK(corpus.graphs[0] == Graph(3, {{0, 1}, {1, 2}}));
    CHECK(corpus.warnings.empty());
}

TEST_CASE("edgelist: comments, blanks, and multiple blocks") {
    const std::string text =
        "# corpus of two graphs\n"
        "graph 3 2\n0 1\n1 2\n"
        "\n"
        "# second block\n"
        "graph 2 1\n0 1\n";
    const auto corpus = parse_edgelist(text);
    REQUIRE(corpus.graphs.size() == 2);
    CHECK(corpus.graphs[1].edge_count() == 1);
}

TEST_CASE("edgelist: duplicate edge dedups with warning or rejects under strict") {
    const std::string text = "graph 3 2\n0 1\n1 0\n";
    const auto lax = parse_edgelist(text);
    REQUIRE(lax.graphs.size() == 1);
    CHECK(lax.graphs[0].edge_count() == 1);
    CHECK(lax.warnings.size() == 1);
    CHECK_THROWS_AS(parse_edgelist(text, {.strict = true}), parse_error);
}

TEST_CASE("edgelist: malformed lines carry line numbers") {
    try {
        parse_edgelist("graph 3 2\n0 1\nnope\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_edgelist("graph 3 1\n0 0\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist("graph 3 1\n0 7\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist("graph 3 5\n0 1\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist("graf 3 1\n0 1\n"), parse_error);
}

TEST_CASE("corpus: save/load round-trip is byte-exact") {
    const auto graphs = erdos_renyi_corpus(4, 15, 3.0, 21, "c/base");
    const auto path = temp_path("corpus.txt");
    save_corpus(path, graphs);
    const auto loaded = import_edgelist(path);
    REQUIRE(loaded.graphs.size() == graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i)
        CHECK(loaded.graphs[i] == graphs[i]);
    save_corpus(temp_path("corpus2.txt"), loaded.graphs);
    CHECK(read_file(path) == read_file(temp_path("corpus2.txt")));
}

TEST_CASE("dataset: save/load round-trip preserves structure and bytes") {
    const auto bases = erdos_renyi_corpus(6, 20, 3.0, 17, "d/base");
    const auto ds = build_dataset(bases, {0.1, NoiseMode::add_remove}, 17, "val", "er20");
    const auto path = temp_path("dataset.txt");
    save_dataset(path, ds);
    const auto loaded = load_dataset(path);
    REQUIRE(loaded.samples.size() == ds.samples.size());
    CHECK(loaded.meta.name == ds.meta.name);
    CHECK(loaded.meta.eta == ds.meta.eta);
    CHECK(loaded.meta.master_seed == ds.meta.master_seed);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(loaded.samples[i].base == ds.samples[i].base);
        CHECK(loaded.samples[i].noisy == ds.samples[i].noisy);
        CHECK(loaded.samples[i].truth == ds.samples[i].truth);
        CHECK(loaded.samples[i].seed == ds.samples[i].seed);
    }
    CHECK(dataset_to_string(loaded) == read_file(path));
}

TEST_CASE("dataset: corrupted content is rejected naming the sample") {
    const auto bases = erdos_renyi_corpus(2, 10, 2.0, 5, "x/base");
    const auto ds = build_dataset(bases, {0.05, NoiseMode::add_only}, 5, "train", "mini");
    std::string text = dataset_to_string(ds);

    SUBCASE("duplicate edge in a sample") {
        // Duplicate the first base edge line of sample 1.
        const auto anchor = text.find("sample 1");
        REQUIRE(anchor != std::string::npos);
        auto base_pos = text.find("base ", anchor);
        REQUIRE(base_pos != std::string::npos);
        const auto line_end = text.find('\n', base_pos);
        const auto edge_end = text.find('\n', line_end + 1);
        const std::string edge_line = text.substr(line_end + 1, edge_end - line_end);
        text.insert(edge_end + 1, edge_line);
        // Bump the recorded edge count to keep the reader aligned.
        const auto count_start = base_pos + 5;
        const int m = std::stoi(text.substr(count_start, line_end - count_start));
        text.replace(count_start, line_end - count_start, std::to_string(m + 1));
        try {
            dataset_from_string(text);
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find("sample 1") != std::string::npos);
        }
    }

    SUBCASE("truth that is not a bijection") {
        const auto pos = text.find("truth ");
        REQUIRE(pos != std::string::npos);
        const auto end = text.find('\n', pos);
        std::string line = text.substr(pos, end - pos);
        // Replace the last value with a duplicate of the first.
        const auto first_val = line.substr(6, line.find(' ', 6) - 6);
        const auto last_space = line.rfind(' ');
        line = line.substr(0, last_space + 1) + first_val;
        text.replace(pos, end - pos, line);
        CHECK_THROWS_AS(dataset_from_string(text), validation_error);
    }

    SUBCASE("bad magic") {
        text[0] = 'x';
        CHECK_THROWS_AS(dataset_from_string(text), parse_error);
    }

    SUBCASE("trailing garbage") {
        text += "unexpected\n";
        CHECK_THROWS_AS(dataset_from_string(text), parse_error);
    }
}

TEST_CASE("format_double round-trips exactly") {
    for (double x : {0.04, 0.15, 1.0 / 3.0, 2.5e-17, 0.0, 123456.789}) {
        const auto s = format_double(x);
        CHECK(parse_double(s, 0) == x);
    }
}
