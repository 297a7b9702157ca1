#include "hexmix/counting.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace hexmix {

BigInt macmahon_count(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("negative side length");
    BigInt num = 1, den = 1;
    for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= b; ++j)
            for (int k = 1; k <= c; ++k) {
                num *= i + j + k - 1;
                den *= i + j + k - 2;
            }
    return num / den;
}

BigInt column_transfer_count(const HexDomain& d) {
    using Column = std::vector<int>;
    // Column x holds heights for y = column_low(x) .. column_high(x).
    auto columns_at = [&](int x) {
        const int lo = d.column_low(x), hi = d.column_high(x);
        const int h0 = d.boundary_height(x, lo), h1 = d.boundary_height(x, hi);
        std::vector<Column> out;
        Column c(hi - lo + 1);
        c[0] = h0;
        std::function<void(int)> rec = [&](int j) {
            if (j == hi - lo) {
                if (c[j] == h1) out.push_back(c);
                return;
            }
            for (int s = 0; s <= 1; ++s) {
                c[j + 1] = c[j] + s;
                const int remaining = hi - lo - (j + 1);
                if (c[j + 1] <= h1 && h1 - c[j + 1] <= remaining) rec(j + 1);
            }
        };
        if (hi == lo) {
            if (h0 == h1) out.push_back(c);
        } else {
            rec(0);
        }
        // Interior boundary vertices (on the N or S sides) must match too.
        std::vector<Column> kept;
        for (auto& col : out) {
            bool ok = true;
            for (int y = lo; y <= hi && ok; ++y)
                if (d.on_boundary(x, y)) ok = col[y - lo] == d.boundary_height(x, y);
            if (ok) kept.push_back(std::move(col));
        }
        return kept;
    };

    std::map<Column, BigInt> layer;
    for (auto& c : columns_at(0)) layer[c] = 1;
    for (int x = 1; x <= d.max_x(); ++x) {
        const int plo = d.column_low(x - 1), phi = d.column_high(x - 1);
        const int lo = d.column_low(x), hi = d.column_high(x);
        std::map<Column, BigInt> next;
        for (auto& c : columns_at(x)) {
            BigInt total = 0;
            for (const auto& [p, n] : layer) {
                bool ok = true;
                for (int y = lo; y <= hi && ok; ++y) {
                    const int h = c[y - lo];
                    if (y >= plo && y <= phi) {
                        const int s = h - p[y - plo];
                        ok = s == 0 || s == -1;
                    }
                    if (ok && y - 1 >= plo && y - 1 <= phi) {
                        const int s = h - p[y - 1 - plo];
                        ok = s == 0 || s == 1;
                    }
                }
                if (ok) total += n;
            }
            if (total != 0) next[c] = total;
        }
        layer = std::move(next);
    }
    BigInt sum = 0;
    for (const auto& [c, n] : layer) sum += n;
    return sum;
}

}  // namespace hexmix
