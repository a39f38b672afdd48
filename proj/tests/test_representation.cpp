#include <doctest.h>

#include <random>

#include "estf/error.hpp"
#include "estf/representation.hpp"
#include "estf/transforms.hpp"
#include "reference/reference.hpp"
#include "support.hpp"

using namespace estf;

TEST_CASE("empty stream gives an all-zero grid") {
    const auto grid = accumulate(EventStream({8, 4, 100}, {}), 3);
    CHECK(grid.counts().size() == 3 * 2 * 4 * 8);
    CHECK(grid.total() == 0);
}

TEST_CASE("one event at t = 0 fills exactly one cell") {
    const auto grid = accumulate(EventStream({8, 4, 100}, {{5, 2, 0, 1}}), 4);
    CHECK(grid.total() == 1);
    CHECK(grid.at(0, 1, 2, 5) == 1);
    CHECK(std::count(grid.counts().begin(), grid.counts().end(), 0u) == static_cast<long>(grid.counts().size() - 1));
}

TEST_CASE("time bins partition [0, t_max]") {
    CHECK(time_bin(0, 99, 10) == 0);
    CHECK(time_bin(9, 99, 10) == 0);
    CHECK(time_bin(10, 99, 10) == 1);
    CHECK(time_bin(99, 99, 10) == 9);
    CHECK(time_bin(~std::uint64_t{0} - 1, ~std::uint64_t{0} - 1, 7) == 6);
    CHECK_THROWS_AS(accumulate(EventStream({1, 1, 0}, {}), 0), InvalidArgument);
}

TEST_CASE("1000-event fixture: per-bin counts match a histogram pass") {
    const auto s = testing::dense_stream(1000, 3, {32, 24, 99'999});
    const auto grid = accumulate(s, 10);
    std::vector<std::uint64_t> per_bin(10, 0);
    for (const Event& e : s.events()) per_bin[e.t / 10'000] += 1;
    for (std::uint32_t b = 0; b < 10; ++b) {
        std::uint64_t sum = 0;
        for (std::uint32_t ch = 0; ch < 2; ++ch)
            for (std::uint32_t r = 0; r < 24; ++r)
                for (std::uint32_t c = 0; c < 32; ++c) sum += grid.at(b, ch, r, c);
        CHECK(sum == per_bin[b]);
    }
    CHECK(grid == ref::accumulate(s, 10));
}

TEST_CASE("accumulate conserves counts and matches the reference") {
    std::mt19937_64 gen(8);
    for (int round = 0; round < 200; ++round) {
        const auto s = testing::random_stream(gen);
        const auto bins = static_cast<std::uint32_t>(1 + gen() % 12);
        const auto grid = accumulate(s, bins);
        REQUIRE(grid.total() == s.size());
        REQUIRE(grid == ref::accumulate(s, bins));
    }
    const auto big = testing::dense_stream(300000, 1, {64, 48, 1'000'000});
    CHECK(accumulate(big, 16) == ref::accumulate(big, 16));
}

TEST_CASE("polarity inversion of the whole stream swaps the channel planes") {
    std::mt19937_64 gen(21);
    for (int round = 0; round < 50; ++round) {
        const auto s = testing::random_stream(gen);
        const auto a = accumulate(s, 5);
        const auto b = accumulate(istp(s, {0, s.size()}, Domain::Polarity), 5);
        for (std::uint32_t bin = 0; bin < 5; ++bin)
            for (std::uint32_t r = 0; r < a.height(); ++r)
                for (std::uint32_t c = 0; c < a.width(); ++c) {
                    REQUIRE(a.at(bin, 0, r, c) == b.at(bin, 1, r, c));
                    REQUIRE(a.at(bin, 1, r, c) == b.at(bin, 0, r, c));
                }
    }
}

TEST_CASE("EVG1 encoding") {
    const auto grid = accumulate(EventStream({3, 2, 9}, {{1, 0, 0, 0}, {2, 1, 9, 1}, {2, 1, 9, 1}}), 2);
    const auto bytes = encode_grid(grid);
    REQUIRE(bytes.size() == 16 + 4 * 2 * 2 * 2 * 3);
    CHECK(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 16) ==
          std::vector<std::uint8_t>{'E', 'V', 'G', '1', 2, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0});
    // (bin 0, ch 0, row 0, col 1) is cell 1; (bin 1, ch 1, row 1, col 2) is cell 23.
    CHECK(bytes[16 + 4 * 1] == 1);
    CHECK(bytes[16 + 4 * 23] == 2);
    CHECK(decode_grid(bytes) == grid);

    auto cut = bytes;
    cut.pop_back();
    CHECK_THROWS_AS(decode_grid(cut), FormatError);
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_grid(bad), FormatError);
    auto huge = bytes;
    huge[7] = 0xFF;
    huge[11] = 0xFF;
    CHECK_THROWS_AS(decode_grid(huge), FormatError);
}

TEST_CASE("PGM rendering") {
    const auto grid = accumulate(EventStream({2, 1, 9}, {{0, 0, 0, 1}, {1, 0, 1, 0}, {1, 0, 2, 0}}), 1);
    const auto pgm = encode_pgm(grid, 0);
    CHECK(pgm == std::string("P5\n2 1\n255\n") + static_cast<char>(128 + 63) + static_cast<char>(1));
    CHECK(encode_pgm(accumulate(EventStream({2, 2, 9}, {}), 1), 0).substr(11) == std::string(4, static_cast<char>(128)));
    CHECK_THROWS_AS(encode_pgm(grid, 1), InvalidArgument);
}
