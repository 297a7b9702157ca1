#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "hexmix/counting.hpp"
#include "hexmix/export.hpp"
#include "hexmix/lattice.hpp"
#include "support/oracles.hpp"

using namespace hexmix;

namespace {

const std::vector<HeightField>& all222() {
    static const std::vector<HeightField> fs = enumerate_all(make_domain(2, 2, 2), 100);
    return fs;
}

}  // namespace

TEST_CASE("domain construction") {
    CHECK(make_domain(1, 1, 1)->size() == 7);
    CHECK(make_domain(2, 2, 2)->lozenge_count() == 12);
    CHECK_THROWS_AS(make_domain(1, 1, 0), std::invalid_argument);
    const auto d = make_domain(3, 2, 4);
    int n = 0;
    for (int x = -1; x <= 8; ++x)
        for (int y = -1; y <= 8; ++y)
            if (d->contains(x, y)) CHECK(d->index(x, y) == n++);
    CHECK(n == d->size());
}

TEST_CASE("tiling counts agree with independent counters") {
    const int sides[][3] = {{1, 1, 1}, {2, 1, 1}, {2, 2, 2}, {3, 2, 4}, {3, 3, 3}, {1, 4, 2}};
    for (const auto& s : sides) {
        CAPTURE(s[0]);
        CAPTURE(s[1]);
        CAPTURE(s[2]);
        const auto d = make_domain(s[0], s[1], s[2]);
        const long long det = oracle::path_determinant_count(s[0], s[1], s[2]);
        CHECK(oracle::plane_partition_count(s[0], s[1], s[2]) == det);
        CHECK(oracle::brute_force_count(s[0], s[1], s[2]) == det);
        CHECK(macmahon_count(s[0], s[1], s[2]) == det);
        CHECK(column_transfer_count(*d) == det);
        CHECK(static_cast<long long>(enumerate_all(d, 100000).size()) == det);
    }
    CHECK(enumerate_all(make_domain(1, 1, 1), 10).size() == 2);
    CHECK(enumerate_all(make_domain(2, 1, 1), 10).size() == 3);
    CHECK(all222().size() == 20);
    CHECK_THROWS_AS(enumerate_all(make_domain(2, 2, 2), 19), std::length_error);
}

TEST_CASE("extreme tilings and volume") {
    const auto d1 = make_domain(1, 1, 1);
    const auto [lo1, hi1] = extreme_tilings(d1);
    CHECK(lo1.at(1, 1) == 0);
    CHECK(hi1.at(1, 1) == 1);
    CHECK(volume(lo1) == 3);
    CHECK(volume(hi1) == 4);

    const auto d = make_domain(2, 2, 2);
    const auto [lo, hi] = extreme_tilings(d);
    CHECK(volume(hi) - volume(lo) == 8);
    for (int i = 0; i < d->size(); ++i)
        if (d->is_boundary(i)) CHECK(lo[i] == hi[i]);
    for (const auto& f : all222()) {
        CHECK(lo.leq(f));
        CHECK(f.leq(hi));
        CHECK(volume(lo) <= volume(f));
        CHECK(volume(f) <= volume(hi));
    }
}

TEST_CASE("local bounds and flips") {
    const auto d1 = make_domain(1, 1, 1);
    const auto [lo1, hi1] = extreme_tilings(d1);
    CHECK(local_bounds(hi1, Vertex{1, 1}) == std::make_pair(0, 1));
    CHECK(local_bounds(hi1, Vertex{0, 0}) == std::make_pair(0, 0));
    for (const auto& f : {lo1, hi1}) {
        const auto fl = flippable(f);
        REQUIRE(fl.size() == 1);
        CHECK(d1->vertex(fl[0].site) == Vertex{1, 1});
    }
    const auto [lo, hi] = extreme_tilings(make_domain(2, 2, 2));
    const auto fl = flippable(lo);
    REQUIRE(fl.size() == 1);
    CHECK(lo.domain().vertex(fl[0].site) == Vertex{2, 2});
    // brute force: the sites where +-1 keeps the field admissible
    for (const auto& f : all222()) {
        std::set<int> movable;
        for (int i : f.domain().interior())
            for (int dh : {-1, 1}) {
                HeightField g = f;
                g[i] += dh;
                if (is_admissible(g)) movable.insert(i);
            }
        std::set<int> listed;
        for (const auto& s : flippable(f)) listed.insert(s.site);
        CHECK(listed == movable);
    }

    for (const auto& f : all222()) {
        for (const auto& s : flippable(f)) {
            HeightField g = f;
            g[s.site] = g[s.site] == s.h_min ? s.h_max : s.h_min;
            CHECK(is_admissible(g));
            CHECK(std::abs(volume(g) - volume(f)) == 1);
            bool still = false;
            for (const auto& t : flippable(g)) still = still || t.site == s.site;
            CHECK(still);
        }
        // A vertex whose bounds coincide cannot change.
        for (int i : f.domain().interior()) {
            const auto [m, M] = local_bounds(f, i);
            CHECK(m <= f[i]);
            CHECK(f[i] <= M);
        }
    }
}

TEST_CASE("meet and join on all pairs of (2,2,2)") {
    const auto& fs = all222();
    const auto [lo, hi] = extreme_tilings(fs[0].domain_ptr());
    CHECK(meet_join(lo, hi) == std::make_pair(lo, hi));
    for (const auto& f : fs) {
        CHECK(meet_join(f, f) == std::make_pair(f, f));
        for (const auto& g : fs) {
            const auto [m, j] = meet_join(f, g);
            CHECK(is_admissible(m));
            CHECK(is_admissible(j));
            CHECK(m.leq(f));
            CHECK(m.leq(g));
            CHECK(f.leq(j));
            CHECK(g.leq(j));
            if (f.leq(g) && g.leq(f)) CHECK(f == g);
            // lattice identities
            CHECK(meet_join(f, j).first == f);
            CHECK(meet_join(f, m).second == f);
        }
    }
}

TEST_CASE("level lines") {
    const auto d1 = make_domain(1, 1, 1);
    const auto [lo1, hi1] = extreme_tilings(d1);
    const LevelLine l = extract_level_line(hi1, 1);
    CHECK(l.x0 == 0);
    CHECK(l.y0 == 0);
    REQUIRE(l.steps.size() == 2);
    // Starts at (0, 1/2), ends at (2, 3/2).
    CHECK(l.ordinates().front() == 0);
    CHECK(l.ordinates().back() == 1);
    CHECK(l.steps[0] == Step::SE);
    CHECK(l.steps[1] == Step::NE);
    CHECK(extract_level_line(lo1, 1).steps[0] == Step::NE);

    for (const auto& f : all222()) {
        const auto lines = extract_level_lines(f);
        CHECK(lines.size() == 2);
        CHECK(reconstruct_from_level_lines(f.domain_ptr(), lines) == f);
    }
    const auto d = make_domain(3, 2, 4);
    for (const auto& f : enumerate_all(d, 100000)) {
        const auto lines = extract_level_lines(f);
        for (std::size_t k = 1; k < lines.size(); ++k) {
            const auto a = lines[k - 1].ordinates(), b = lines[k].ordinates();
            for (std::size_t x = 0; x < a.size(); ++x) CHECK(a[x] < b[x]);
        }
        CHECK(reconstruct_from_level_lines(d, lines) == f);
    }
}

TEST_CASE("symmetries") {
    const auto& fs = all222();
    const auto [lo, hi] = extreme_tilings(fs[0].domain_ptr());
    const Symmetry c = Symmetry::complementation();
    CHECK(symmetry_apply(hi, c) == lo);
    CHECK(symmetry_apply(lo, c) == hi);
    for (const Symmetry& s : all_symmetries()) {
        std::set<std::vector<int>> image;
        for (const auto& f : fs) {
            const HeightField g = symmetry_apply(f, s);
            CHECK(is_admissible(g));
            image.insert(g.values());
        }
        CHECK(image.size() == fs.size());
    }
    for (const auto& f : fs) CHECK(symmetry_apply(symmetry_apply(f, c), c) == f);
    CHECK_THROWS(symmetry_apply(enumerate_all(make_domain(2, 1, 1), 10)[0], Symmetry{{1, 0, 2}, false}));
}

TEST_CASE("height grid text round trip") {
    for (const auto& f : all222()) {
        const std::string s = to_grid(f);
        CHECK(from_grid(s) == f);
        CHECK(to_grid(from_grid(s)) == s);
    }
    std::ostringstream os;
    save_grid_document(os, {{"hexmix test", "config {\"n\":2}"}, all222()[7]});
    std::istringstream is(os.str());
    const GridDocument doc = load_grid_document(is);
    CHECK(doc.header.size() == 2);
    CHECK(doc.field == all222()[7]);
    std::ostringstream again;
    save_grid_document(again, doc);
    CHECK(again.str() == os.str());

    CHECK_THROWS(from_grid("hex 1 1 1\n0 0 .\n0 5 1\n. 1 1\n"));
    CHECK_THROWS(from_grid("box 1 1 1\n"));
}
