#include "thzcov/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace thzcov {

double human_los_probability(double d, const DerivedConstants& c)
{
    return std::exp(-c.alpha * d);
}

double wall_los_probability(double d, const DerivedConstants& c)
{
    return std::exp(-c.eta * d);
}

double los_probability(double d, const DerivedConstants& c)
{
    return std::exp(-c.blockage_rate() * d);
}

double los_intensity(double d, const DerivedConstants& c, const Scenario& s)
{
    return 2.0 * M_PI * s.lambda_A * d * los_probability(d, c);
}

double los_count_mean(double d, const DerivedConstants& c, const Scenario& s)
{
    const double k = c.blockage_rate();
    if (d <= 0.0) return 0.0;
    const double kd = k * d;
    double bracket;
    if (kd < 1e-4) {
        // series to avoid cancellation: 1 - e^{-kd}(1+kd) = kd^2/2 - kd^3/3 + ...
        bracket = kd * kd * (0.5 - kd / 3.0 + kd * kd / 8.0);
    } else {
        bracket = 1.0 - std::exp(-kd) * (1.0 + kd);
    }
    return 2.0 * M_PI * s.lambda_A / (k * k) * bracket;
}

double nearest_los_pdf(double d0, const DerivedConstants& c, const Scenario& s)
{
    if (d0 < 0.0) return 0.0;
    return los_intensity(d0, c, s) * std::exp(-los_count_mean(d0, c, s));
}

double nearest_los_cdf(double d0, const DerivedConstants& c, const Scenario& s)
{
    if (d0 <= 0.0) return 0.0;
    return 1.0 - std::exp(-los_count_mean(d0, c, s));
}

ApField sample_ap_field(const Scenario& s, std::mt19937_64& rng, double region_radius)
{
    ApField field;
    field.region_radius = region_radius;
    const double mean = s.lambda_A * M_PI * region_radius * region_radius;
    std::poisson_distribution<long> count(mean);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const long n = count(rng);
    field.positions.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        double r = region_radius * std::sqrt(uni(rng));
        double th = 2.0 * M_PI * uni(rng);
        field.positions.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return field;
}

BlockageField sample_blockage_field(const Scenario& s, const DerivedConstants& c,
                                    std::mt19937_64& rng, double region_radius)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto draw_disc = [&](double radius) {
        double r = radius * std::sqrt(uni(rng));
        double th = 2.0 * M_PI * uni(rng);
        return Vec2{r * std::cos(th), r * std::sin(th)};
    };

    // Humans only matter within R_B of a link; walls within half a length.
    const double human_radius = region_radius + s.R_B;
    const double wall_pad = s.wall_length_mode == WallLengthMode::Fixed
                                ? 0.5 * s.mean_L_W
                                : 7.0 * s.mean_L_W;
    const double wall_radius = region_radius + wall_pad;

    std::vector<Human> humans;
    {
        std::poisson_distribution<long> count(s.lambda_B * M_PI * human_radius * human_radius);
        long n = count(rng);
        humans.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) humans.push_back({draw_disc(human_radius)});
    }

    std::vector<Wall> walls;
    {
        std::poisson_distribution<long> count(s.lambda_W * M_PI * wall_radius * wall_radius);
        std::exponential_distribution<double> explen(1.0 / s.mean_L_W);
        long n = count(rng);
        walls.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            Wall w;
            w.center = draw_disc(wall_radius);
            w.length = s.wall_length_mode == WallLengthMode::Fixed ? s.mean_L_W : explen(rng);
            w.along_y = uni(rng) < 0.5;
            walls.push_back(w);
        }
    }
    return BlockageField(std::move(humans), std::move(walls), region_radius, s);
}

BlockageField::BlockageField(std::vector<Human> humans, std::vector<Wall> walls,
                             double region_radius, const Scenario& s)
    : humans_(std::move(humans)), walls_(std::move(walls)), region_radius_(region_radius)
{
    human_frac_ = (s.h_B - s.h_U) / (s.h_A - s.h_U);
    rb_ = s.R_B;

    cell_ = 2.0;
    double span = region_radius_ + 8.0 * s.mean_L_W + 2.0 * cell_;
    origin_ = -span;
    ncell_ = std::max(1, static_cast<int>(std::ceil(2.0 * span / cell_)));
    human_cells_.assign(static_cast<std::size_t>(ncell_) * ncell_, {});
    wall_cells_.assign(static_cast<std::size_t>(ncell_) * ncell_, {});

    for (std::size_t i = 0; i < humans_.size(); ++i)
        human_cells_[static_cast<std::size_t>(cell_index(humans_[i].center.x, humans_[i].center.y))]
            .push_back(static_cast<int>(i));

    for (std::size_t i = 0; i < walls_.size(); ++i) {
        const Wall& w = walls_[i];
        double half = 0.5 * w.length;
        Vec2 a = w.center, b = w.center;
        if (w.along_y) { a.y -= half; b.y += half; }
        else { a.x -= half; b.x += half; }
        // axis-aligned: walk the covered cell range
        int c0 = cell_index(a.x, a.y), c1 = cell_index(b.x, b.y);
        int step = w.along_y ? ncell_ : 1;
        for (int cidx = std::min(c0, c1); cidx <= std::max(c0, c1); cidx += step)
            wall_cells_[static_cast<std::size_t>(cidx)].push_back(static_cast<int>(i));
    }
}

int BlockageField::cell_index(double x, double y) const
{
    int ix = static_cast<int>(std::floor((x - origin_) / cell_));
    int iy = static_cast<int>(std::floor((y - origin_) / cell_));
    ix = std::clamp(ix, 0, ncell_ - 1);
    iy = std::clamp(iy, 0, ncell_ - 1);
    return iy * ncell_ + ix;
}

template <class Fn>
bool BlockageField::visit_cells(Vec2 a, Vec2 b, double pad, Fn&& fn) const
{
    const double len = norm({b.x - a.x, b.y - a.y});
    const int steps = static_cast<int>(len / (0.5 * cell_)) + 1;
    const int rad = static_cast<int>(pad / cell_) + 1;
    int last = -1;
    for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        double px = a.x + t * (b.x - a.x);
        double py = a.y + t * (b.y - a.y);
        int center = cell_index(px, py);
        if (center == last) continue;
        last = center;
        int cx = center % ncell_, cy = center / ncell_;
        for (int dy = -rad; dy <= rad; ++dy) {
            int yy = cy + dy;
            if (yy < 0 || yy >= ncell_) continue;
            for (int dx = -rad; dx <= rad; ++dx) {
                int xx = cx + dx;
                if (xx < 0 || xx >= ncell_) continue;
                if (fn(yy * ncell_ + xx)) return true;
            }
        }
    }
    return false;
}

namespace {

// orientation sign of (b - a) x (p - a)
inline double orient(Vec2 a, Vec2 b, Vec2 p)
{
    return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

inline bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
    double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

} // namespace

bool BlockageField::is_los(Vec2 ap, const Scenario&, const DerivedConstants&) const
{
    const double d = norm(ap);
    if (d == 0.0) return true;
    const Vec2 u{ap.x / d, ap.y / d};

    // Humans: blocking zone is the rectangle of half-width R_B along the
    // sub-segment where the link height is below h_B.
    const double d_eff = d * human_frac_;
    const Vec2 p_eff{u.x * d_eff, u.y * d_eff};
    bool blocked = visit_cells({0.0, 0.0}, p_eff, rb_, [&](int cidx) {
        for (int hi : human_cells_[static_cast<std::size_t>(cidx)]) {
            const Vec2& hc = humans_[static_cast<std::size_t>(hi)].center;
            double proj = hc.x * u.x + hc.y * u.y;
            if (proj < 0.0 || proj > d_eff) continue;
            double perp = std::abs(hc.x * u.y - hc.y * u.x);
            if (perp <= rb_) return true;
        }
        return false;
    });
    if (blocked) return false;

    // Walls block anywhere along the full ground projection.
    blocked = visit_cells({0.0, 0.0}, ap, 0.0, [&](int cidx) {
        for (int wi : wall_cells_[static_cast<std::size_t>(cidx)]) {
            const Wall& w = walls_[static_cast<std::size_t>(wi)];
            double half = 0.5 * w.length;
            Vec2 a = w.center, b = w.center;
            if (w.along_y) { a.y -= half; b.y += half; }
            else { a.x -= half; b.x += half; }
            if (segments_intersect({0.0, 0.0}, ap, a, b)) return true;
        }
        return false;
    });
    return !blocked;
}

} // namespace thzcov
