#include "pxhardy/quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pxhardy/error.hpp"

namespace pxhardy {

void CompensatedSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
}

namespace {

constexpr double kNodes[5] = {-0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
                              0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr double kWeights[5] = {0.2369268850561890875142640, 0.4786286704993664680412915,
                                0.5688888888888888888888889, 0.4786286704993664680412915,
                                0.2369268850561890875142640};

std::vector<double> axis_grid(double lo, double hi, std::size_t count, const std::vector<double>& breaks) {
    std::vector<double> grid(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        grid[i] = i == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
    const double eps = 1e-12 * (hi - lo);
    for (double b : breaks)
        if (b > lo + eps && b < hi - eps) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double g : grid)
        if (out.empty() || g - out.back() > eps) out.push_back(g);
    if (out.back() != hi) out.back() = hi;
    return out;
}

struct Panel {
    std::size_t patch;
    Cell cell;
};

// Calls visit(x, w) for every tensor Gauss-Legendre node of a panel, with
// the spherical Jacobian folded into w.
template <class Visit>
void for_each_node(const Patch& patch, const Cell& cell, Point& param, Point& mapped, Visit&& visit) {
    const std::size_t d = cell.dimension();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 5;
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        double w = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t j = rest % 5;
            rest /= 5;
            const double half = 0.5 * (cell.hi[i] - cell.lo[i]);
            param[i] = 0.5 * (cell.lo[i] + cell.hi[i]) + half * kNodes[j];
            w *= half * kWeights[j];
        }
        if (patch.map == Patch::Map::Spherical) {
            mapped = spherical_to_cartesian(patch.center, param);
            visit(PointView(mapped), w * spherical_jacobian(param));
        } else {
            visit(PointView(param), w);
        }
    }
}

class Engine {
public:
    Engine(const VectorIntegrand& f, std::size_t m, const Region& region)
        : f_(f), m_(m), region_(region), out_(m), param_(region.dimension) {}

    // Tensor Gauss-Legendre sum over one parameter cell, written to acc.
    void rule(const Panel& p, double* acc) {
        std::fill(acc, acc + m_, 0.0);
        for_each_node(region_.patches[p.patch], p.cell, param_, mapped_, [&](PointView x, double w) {
            std::fill(out_.begin(), out_.end(), 0.0);
            f_(x, out_);
            for (std::size_t c = 0; c < m_; ++c) {
                if (!std::isfinite(out_[c])) {
                    std::string where;
                    char buf[32];
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        const auto res = std::to_chars(buf, buf + sizeof buf, x[i]);
                        where += (i ? ", " : "") + std::string(buf, res.ptr);
                    }
                    throw EvalError("non-finite integrand at node (" + where + ")");
                }
                acc[c] += w * out_[c];
            }
        });
    }

    static std::vector<Panel> children(const Panel& p) {
        const std::size_t d = p.cell.dimension();
        std::vector<Panel> kids;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            Panel k{p.patch, p.cell};
            for (std::size_t i = 0; i < d; ++i) {
                const double mid = 0.5 * (p.cell.lo[i] + p.cell.hi[i]);
                if (mask & (std::size_t{1} << i)) k.cell.lo[i] = mid;
                else k.cell.hi[i] = mid;
            }
            kids.push_back(std::move(k));
        }
        return kids;
    }

    // Coarse value into q0, sum over children into q1.
    void evaluate(const Panel& p, double* q0, double* q1) {
        rule(p, q0);
        std::fill(q1, q1 + m_, 0.0);
        std::vector<double> tmp(m_);
        for (const auto& k : children(p)) {
            rule(k, tmp.data());
            for (std::size_t c = 0; c < m_; ++c) q1[c] += tmp[c];
        }
    }

private:
    const VectorIntegrand& f_;
    std::size_t m_;
    const Region& region_;
    std::vector<double> out_;
    Point param_;
    Point mapped_;
};

std::vector<Panel> base_panels(const Region& region, std::size_t resolution) {
    if (resolution == 0) throw DomainError("quadrature resolution must be positive");
    std::vector<Panel> out;
    for (std::size_t pi = 0; pi < region.patches.size(); ++pi) {
        const Patch& patch = region.patches[pi];
        const std::size_t d = patch.params.dimension();
        std::vector<std::vector<double>> grids;
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t count = resolution;
            if (patch.map == Patch::Map::Spherical && i > 0 && i + 1 == d) count = 2 * resolution;
            const std::vector<double> none;
            grids.push_back(axis_grid(patch.params.lo[i], patch.params.hi[i], count,
                                      i < patch.breaks.size() ? patch.breaks[i] : none));
        }
        std::vector<std::size_t> idx(d, 0);
        for (bool done = d == 0; !done;) {
            Panel p{pi, Cell{Point(d), Point(d)}};
            for (std::size_t i = 0; i < d; ++i) {
                p.cell.lo[i] = grids[i][idx[i]];
                p.cell.hi[i] = grids[i][idx[i] + 1];
            }
            out.push_back(std::move(p));
            std::size_t axis = d;
            done = true;
            while (axis > 0) {
                --axis;
                if (++idx[axis] + 1 < grids[axis].size()) {
                    done = false;
                    break;
                }
                idx[axis] = 0;
            }
        }
    }
    return out;
}

}  // namespace

Region Region::box(const Cell& cell, const std::vector<Kink>& kinks) {
    Region r;
    r.dimension = cell.dimension();
    Patch p;
    p.params = cell;
    p.breaks.resize(r.dimension);
    for (const auto& k : kinks)
        if (k.axis < r.dimension) p.breaks[k.axis].push_back(k.at);
    r.patches.push_back(std::move(p));
    return r;
}

Region Region::shell(PointView center, double r_lo, double r_hi, const std::vector<Kink>& kinks) {
    const std::size_t n = center.size();
    if (!(r_lo >= 0.0 && r_lo < r_hi)) throw DomainError("shell needs 0 <= r_lo < r_hi");
    if (n == 1) {
        const double c = center[0];
        if (r_lo == 0.0) {
            auto kk = kinks;
            kk.push_back({0, c});
            return box(Cell{{c - r_hi}, {c + r_hi}}, kk);
        }
        Region left = box(Cell{{c - r_hi}, {c - r_lo}}, kinks);
        Region right = box(Cell{{c + r_lo}, {c + r_hi}}, kinks);
        left.patches.push_back(std::move(right.patches.front()));
        return left;
    }
    // Kinks are coordinate hyperplanes, which do not align with spherical
    // panels; all multi-dimensional scenario fields are smooth.
    Region r;
    r.dimension = n;
    Patch p;
    p.map = Patch::Map::Spherical;
    p.center.assign(center.begin(), center.end());
    p.params = Cell{Point(n, 0.0), Point(n, std::numbers::pi)};
    p.params.lo[0] = r_lo;
    p.params.hi[0] = r_hi;
    p.params.hi[n - 1] = 2.0 * std::numbers::pi;
    r.patches.push_back(std::move(p));
    return r;
}

Region Region::of(const Domain& domain, const std::vector<Kink>& kinks) {
    if (domain.kind() == Domain::Kind::Annulus)
        return shell(Point(domain.dimension(), 0.0), domain.r_in(), domain.r_out(), kinks);
    return box(domain.bounding_box(), kinks);
}

Region& Region::grade(std::size_t axis, double at, std::size_t levels) {
    for (Patch& patch : patches) {
        if (axis >= patch.params.dimension()) continue;
        const double lo = patch.params.lo[axis];
        const double hi = patch.params.hi[axis];
        if (at < lo || at > hi) continue;
        if (patch.breaks.size() < patch.params.dimension()) patch.breaks.resize(patch.params.dimension());
        auto& br = patch.breaks[axis];
        double f = 1.0;
        for (std::size_t k = 0; k < levels; ++k) {
            f *= 0.25;
            if (at > lo) br.push_back(at - (at - lo) * f);
            if (at < hi) br.push_back(at + (hi - at) * f);
        }
    }
    return *this;
}

std::vector<QuadratureResult> integrate_many(const VectorIntegrand& f, std::size_t m, const Region& region,
                                             const QuadratureOptions& opts) {
    Engine engine(f, m, region);
    std::vector<Panel> panels = base_panels(region, opts.resolution);
    std::vector<double> q0(panels.size() * m), q1(panels.size() * m);
    for (std::size_t i = 0; i < panels.size(); ++i) engine.evaluate(panels[i], &q0[i * m], &q1[i * m]);

    auto totals = [&](const std::vector<double>& q) {
        std::vector<double> t(m);
        for (std::size_t c = 0; c < m; ++c) {
            CompensatedSum s;
            for (std::size_t i = 0; i < panels.size(); ++i) s.add(q[i * m + c]);
            t[c] = s.value();
        }
        return t;
    };

    std::vector<double> value = totals(q1);
    std::vector<double> error(m);
    {
        const std::vector<double> coarse = totals(q0);
        for (std::size_t c = 0; c < m; ++c) error[c] = std::abs(value[c] - coarse[c]);
    }

    for (std::size_t level = 0; level < opts.levels; ++level) {
        std::vector<double> scale(m);
        for (std::size_t c = 0; c < m; ++c) {
            double mass = 0.0;
            for (std::size_t i = 0; i < panels.size(); ++i) mass += std::abs(q1[i * m + c]);
            scale[c] = std::max({std::abs(value[c]), 1e-3 * mass, 1e-300});
        }
        std::vector<double> disc(panels.size(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            for (std::size_t c = 0; c < m; ++c) disc[i] += std::abs(q1[i * m + c] - q0[i * m + c]) / scale[c];
            total += disc[i];
        }
        if (total <= 1e-10) break;

        // Split the panels carrying the largest discrepancies until they
        // account for 90% of the total.
        std::vector<std::size_t> order(panels.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return disc[a] > disc[b]; });
        std::vector<char> marked(panels.size(), 0);
        const std::size_t fan = std::size_t{1} << region.dimension;
        std::size_t projected = panels.size();
        double acc = 0.0;
        for (std::size_t i : order) {
            if (acc >= 0.9 * total || projected + fan - 1 > opts.max_panels) break;
            marked[i] = 1;
            acc += disc[i];
            projected += fan - 1;
        }
        if (projected == panels.size()) break;

        std::vector<Panel> next;
        std::vector<double> n0, n1;
        next.reserve(projected);
        n0.reserve(projected * m);
        n1.reserve(projected * m);
        std::vector<double> a(m), b(m);
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (!marked[i]) {
                next.push_back(std::move(panels[i]));
                n0.insert(n0.end(), q0.begin() + i * m, q0.begin() + (i + 1) * m);
                n1.insert(n1.end(), q1.begin() + i * m, q1.begin() + (i + 1) * m);
                continue;
            }
            for (auto& kid : Engine::children(panels[i])) {
                engine.evaluate(kid, a.data(), b.data());
                next.push_back(std::move(kid));
                n0.insert(n0.end(), a.begin(), a.end());
                n1.insert(n1.end(), b.begin(), b.end());
            }
        }
        panels = std::move(next);
        q0 = std::move(n0);
        q1 = std::move(n1);
        const std::vector<double> refined = totals(q1);
        for (std::size_t c = 0; c < m; ++c) error[c] = std::abs(refined[c] - value[c]);
        value = refined;
    }

    std::vector<QuadratureResult> out(m);
    for (std::size_t c = 0; c < m; ++c) out[c] = {value[c], error[c], panels.size()};
    return out;
}

QuadratureResult integrate(const Integrand& f, const Region& region, const QuadratureOptions& opts) {
    return integrate_many([&](PointView x, std::span<double> out) { out[0] = f(x); }, 1, region, opts).front();
}

QuadratureResult integrate(const Integrand& f, const Domain& domain, const QuadratureOptions& opts,
                           const std::vector<Kink>& kinks) {
    return integrate(f, Region::of(domain, kinks), opts);
}

std::vector<WeightedNode> quadrature_nodes(const Region& region, std::size_t resolution) {
    std::vector<WeightedNode> nodes;
    Point param(region.dimension), mapped;
    for (const auto& p : base_panels(region, resolution))
        for_each_node(region.patches[p.patch], p.cell, param, mapped,
                      [&](PointView x, double w) { nodes.push_back({Point(x.begin(), x.end()), w}); });
    return nodes;
}

}  // namespace pxhardy
