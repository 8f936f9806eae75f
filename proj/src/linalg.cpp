#include "dpd/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dpd {

void normalize_row(SparseRow& r) {
    std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SparseRow out;
    out.reserve(r.size());
    for (auto& [c, v] : r) {
        if (!out.empty() && out.back().first == c) out.back().second += v;
        else out.emplace_back(c, v);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](auto& p) { return is_zero(p.second); }),
              out.end());
    r = std::move(out);
}

namespace {

// r -= c * p, both sorted
void axpy(SparseRow& r, const Rat& c, const SparseRow& p) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, -c * p[j].second);
            ++j;
        } else {
            Rat v = r[i].second - c * p[j].second;
            if (!is_zero(v)) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

} // namespace

bool RowReducer::add_row(SparseRow row) {
    normalize_row(row);
    while (!row.empty()) {
        int lead = row.front().first;
        auto it = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), lead);
        if (it != pivot_cols_.end() && *it == lead) {
            axpy(row, row.front().second, pivots_[it - pivot_cols_.begin()]);
        } else {
            Rat inv = Rat(1) / row.front().second;
            for (auto& [c, v] : row) v *= inv;
            size_t pos = it - pivot_cols_.begin();
            pivot_cols_.insert(it, lead);
            pivots_.insert(pivots_.begin() + pos, std::move(row));
            return true;
        }
    }
    return false;
}

std::vector<SparseRow> RowReducer::reduced_basis() const {
    std::vector<SparseRow> rows = pivots_;
    // back substitution: clear pivot columns above
    for (size_t i = rows.size(); i-- > 0;) {
        for (size_t j = 0; j < i; ++j) {
            auto& upper = rows[j];
            int pc = pivot_cols_[i];
            auto it = std::lower_bound(upper.begin(), upper.end(), pc,
                                       [](auto& p, int c) { return p.first < c; });
            if (it != upper.end() && it->first == pc) {
                Rat c = it->second;
                axpy(upper, c, rows[i]);
            }
        }
    }
    return rows;
}

int rank_of_rows(const std::vector<SparseRow>& rows) {
    RowReducer rr;
    for (auto r : rows) rr.add_row(std::move(r));
    return rr.rank();
}

long quotient_dimension(long ncols, const std::vector<SparseRow>& rows) {
    bool binomial = true;
    for (auto& r : rows)
        if (r.size() > 2) { binomial = false; break; }

    if (!binomial) {
        std::vector<SparseRow> rs = rows;
        for (auto& r : rs) normalize_row(r);
        return ncols - rank_of_rows(rs);
    }

    // x_i = w_i * x_{root(i)}; a row a*x_i + b*x_j = 0 identifies classes
    std::vector<int> parent(ncols);
    std::vector<Rat> w(ncols, Rat(1));
    std::vector<char> dead(ncols, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::pair<int, Rat>(int)> find = [&](int x) -> std::pair<int, Rat> {
        if (parent[x] == x) return {x, w[x]};
        auto [r, wr] = find(parent[x]);
        parent[x] = r;
        w[x] = w[x] * wr;
        return {r, w[x]};
    };
    for (auto raw : rows) {
        SparseRow r = std::move(raw);
        normalize_row(r);
        if (r.empty()) continue;
        if (r.size() == 1) {
            auto [root, wr] = find(r[0].first);
            dead[root] = 1;
            continue;
        }
        auto [ri, wi] = find(r[0].first);
        auto [rj, wj] = find(r[1].first);
        // a * wi * x_ri + b * wj * x_rj = 0
        Rat a = r[0].second * wi, b = r[1].second * wj;
        if (ri == rj) {
            if (!is_zero(a + b)) dead[ri] = 1;
            continue;
        }
        // x_rj = -(a/b) x_ri
        parent[rj] = ri;
        w[rj] = -(a / b);
        if (dead[rj]) dead[ri] = 1;
    }
    long alive = 0;
    for (long i = 0; i < ncols; ++i) {
        auto [r, wr] = find(static_cast<int>(i));
        (void)wr;
        if (static_cast<long>(r) == i && !dead[r]) ++alive;
    }
    return alive;
}

std::vector<SparseRow> nullspace_basis(int ncols, const std::vector<SparseRow>& rows) {
    RowReducer rr;
    for (auto r : rows) rr.add_row(r);
    auto red = rr.reduced_basis();
    std::vector<char> is_pivot(ncols, 0);
    std::vector<int> pivot_of_row(red.size());
    for (size_t i = 0; i < red.size(); ++i) {
        pivot_of_row[i] = red[i].front().first;
        is_pivot[red[i].front().first] = 1;
    }
    std::vector<SparseRow> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        SparseRow v;
        v.emplace_back(f, Rat(1));
        for (size_t i = 0; i < red.size(); ++i) {
            auto it = std::lower_bound(red[i].begin(), red[i].end(), f,
                                       [](auto& p, int c) { return p.first < c; });
            if (it != red[i].end() && it->first == f)
                v.emplace_back(pivot_of_row[i], -it->second);
        }
        normalize_row(v);
        basis.push_back(std::move(v));
    }
    // emit in unique reduced echelon form
    RowReducer rb;
    for (auto& v : basis) rb.add_row(v);
    return rb.reduced_basis();
}

} // namespace dpd
