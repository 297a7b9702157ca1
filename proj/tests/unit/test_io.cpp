#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>
#include <sstream>

#include "hexmix/experiments.hpp"
#include "hexmix/export.hpp"
#include "hexmix/report.hpp"
#include "hexmix/svg.hpp"

using namespace hexmix;

namespace {

int count(const std::string& s, const std::string& needle) {
    int n = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("lozenge counts") {
    for (int n : {1, 2, 3}) {
        for (const auto& f : enumerate_all(make_domain(n, n, n), 1000)) CHECK(lozenges(f).size() == std::size_t(3 * n * n));
    }
    const auto d = make_domain(3, 2, 4);
    for (const auto& f : cftp_samples(d, 0.0, 5, 1)) CHECK(static_cast<int>(lozenges(f).size()) == d->lozenge_count());
    for (const auto& f : cftp_samples(make_domain(8, 8, 8), 0.0, 2, 1)) CHECK(lozenges(f).size() == 192u);
}

TEST_CASE("lozenge orientation counts are fixed by the sides") {
    const auto d = make_domain(3, 2, 4);
    for (const auto& f : cftp_samples(d, 0.0, 5, 2)) {
        int h = 0, v = 0, g = 0;
        for (const auto& l : lozenges(f)) {
            h += l.type == LozengeType::Horizontal;
            v += l.type == LozengeType::Vertical;
            g += l.type == LozengeType::Diagonal;
        }
        CHECK(h + v + g == d->lozenge_count());
        // each type count is a product of two sides
        std::vector<int> got{h, v, g}, want{3 * 2, 2 * 4, 4 * 3};
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("SVG rendering") {
    const auto d1 = make_domain(1, 1, 1);
    const HeightField f1 = enumerate_all(d1, 10)[0];
    const std::string s1 = render_svg(f1);
    CHECK(count(s1, "<polygon class=\"lozenge") == 3);
    CHECK(s1 == render_svg(f1));

    const auto d = make_domain(6, 4, 5);
    const HeightField f = cftp_samples(d, 0.0, 1, 3)[0];
    SvgOptions o;
    o.arctic = true;
    o.analytic_levels = true;
    o.discrete_levels = true;
    o.comments = {"config {\"n\":6}", "a -- b"};
    const std::string s = render_svg(f, o);
    CHECK(s == render_svg(f, o));
    CHECK(count(s, "class=\"level analytic\"") == d->nb());
    CHECK(count(s, "class=\"level discrete\"") == d->nb());
    CHECK(count(s, "class=\"arctic\"") == 1);
    CHECK(count(s, "<polygon class=\"lozenge") == d->lozenge_count());
    CHECK(s.find("a - - b") != std::string::npos);
    CHECK(count(s, "--") == 2);  // only the comment delimiters
}

TEST_CASE("grid document round trip keeps bytes") {
    const HeightField f = cftp_samples(make_domain(4, 3, 5), 0.0, 1, 4)[0];
    std::ostringstream a;
    save_grid_document(a, {{"hexmix " + build_id(), "config {\"seed\":4}"}, f});
    std::istringstream in(a.str());
    std::ostringstream b;
    save_grid_document(b, load_grid_document(in));
    CHECK(a.str() == b.str());
}

TEST_CASE("shape CSV") {
    std::ostringstream os;
    write_shape_csv(os, ShapeParams(0.0, 1, 1, 1), 4, 4, 100, {"config x"});
    const std::string s = os.str();
    CHECK(s.rfind("# config x\nx,y,phase,H,dHx,dHy,xi,d,e\n", 0) == 0);
    const auto at = s.find("\n1,1,liquid,");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(s.substr(at + 12)) == doctest::Approx(0.5).epsilon(1e-12));
    std::ostringstream arc;
    write_arctic_csv(arc, ShapeParams(0.0, 1, 1, 1), 10);
    CHECK(count(arc.str(), "\n") == 11);
}

TEST_CASE("report serialisation") {
    ExperimentReport r;
    r.name = "demo";
    r.config = {{"n", 3}};
    r.seeds = {5};
    r.stats["x"] = 0.1;
    r.verdict("x small", true);
    r.columns = {"a", "b"};
    r.rows = {{1.0 / 3, 2}};
    r.wall_seconds = 1.25;
    CHECK(r.passed());
    CHECK(to_json(r, false).dump() == to_json(r, false).dump());
    CHECK(to_json(r, false).dump().find("wall") == std::string::npos);
    std::ostringstream csv;
    write_csv(csv, r);
    CHECK(csv.str().find("0.33333333333333331") != std::string::npos);
    r.verdict("y", false);
    CHECK_FALSE(r.passed());
}
