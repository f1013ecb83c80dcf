#include "gnt/catalog.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "gnt/errors.hpp"

namespace gnt {

namespace {

using JetVector = std::vector<Jet>;
using ChartFunction = std::function<ImmersionJet(const JetVector& vars)>;

class ChartImmersion final : public Immersion {
public:
    ChartImmersion(std::string name, int m, Ambient ambient, std::vector<AxisDomain> domain, ChartFunction f)
        : name_(std::move(name)), m_(m), ambient_(ambient), domain_(std::move(domain)), f_(std::move(f)) {}

    std::string name() const override { return name_; }
    int m() const override { return m_; }
    Ambient ambient() const override { return ambient_; }
    std::vector<AxisDomain> domain() const override { return domain_; }

    ImmersionJet evaluate(std::span<const double> x) const override {
        if (static_cast<int>(x.size()) != m_) throw PreconditionError("chart point has the wrong dimension");
        JetVector vars;
        for (int i = 0; i < m_; ++i) vars.push_back(Jet::variable(m_, i, x[static_cast<std::size_t>(i)]));
        return f_(vars);
    }

private:
    std::string name_;
    int m_;
    Ambient ambient_;
    std::vector<AxisDomain> domain_;
    ChartFunction f_;
};

std::vector<AxisDomain> sphere_domain(int m) {
    std::vector<AxisDomain> d(static_cast<std::size_t>(m - 1), {AxisRule::gauss_legendre, 0.0, std::numbers::pi});
    d.push_back({AxisRule::periodic, 0.0, 2 * std::numbers::pi});
    return d;
}

std::vector<AxisDomain> torus_domain(int m) {
    return std::vector<AxisDomain>(static_cast<std::size_t>(m), {AxisRule::periodic, 0.0, 2 * std::numbers::pi});
}

JetVector unit_sphere_point(const JetVector& vars) {
    const int m = static_cast<int>(vars.size());
    JetVector w;
    Jet s(m, 1.0);
    for (int i = 0; i + 1 < m; ++i) {
        w.push_back(s * cos(vars[static_cast<std::size_t>(i)]));
        s *= sin(vars[static_cast<std::size_t>(i)]);
    }
    w.push_back(s * cos(vars.back()));
    w.push_back(s * sin(vars.back()));
    return w;
}

JetVector scaled(const JetVector& v, const Jet& s) {
    JetVector out;
    for (const auto& c : v) out.push_back(c * s);
    return out;
}

JetVector scaled(const JetVector& v, double s) {
    JetVector out;
    for (const auto& c : v) out.push_back(c * s);
    return out;
}

JetVector cross(const JetVector& a, const JetVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Jet dot(const JetVector& a, const JetVector& b) {
    Jet s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string describe(std::string_view name, std::initializer_list<std::pair<const char*, double>> params) {
    std::ostringstream os;
    os.precision(17);
    os << name << '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        os << (first ? "" : ", ") << key << '=' << value;
        first = false;
    }
    os << ')';
    return os.str();
}

void require(bool ok, const std::string& message) {
    if (!ok) throw PreconditionError(message);
}

}  // namespace

std::shared_ptr<const Immersion> round_sphere(int m, double radius) {
    if (m < 1 || m > 3) throw LimitError("round_sphere supports m = 1, 2, 3");
    require(radius > 0, "round_sphere radius must be positive");
    return std::make_shared<ChartImmersion>(
        describe("round_sphere", {{"m", m}, {"R", radius}}), m, Ambient{AmbientKind::euclidean, m + 1},
        sphere_domain(m), [radius](const JetVector& vars) {
            const JetVector w = unit_sphere_point(vars);
            return ImmersionJet{scaled(w, radius), {w}};
        });
}

std::shared_ptr<const Immersion> flat_torus(std::vector<double> radii) {
    const int m = static_cast<int>(radii.size());
    if (m < 1 || m > 3) throw LimitError("flat_torus supports 1 to 3 radii");
    for (double r : radii) require(r > 0, "flat_torus radii must be positive");
    std::ostringstream name;
    name.precision(17);
    name << "flat_torus(radii=[";
    for (int i = 0; i < m; ++i) name << (i ? "," : "") << radii[static_cast<std::size_t>(i)];
    name << "])";
    return std::make_shared<ChartImmersion>(
        name.str(), m, Ambient{AmbientKind::euclidean, 2 * m}, torus_domain(m), [radii, m](const JetVector& vars) {
            ImmersionJet j;
            const Jet zero(m, 0.0);
            j.frame.assign(static_cast<std::size_t>(m), JetVector(static_cast<std::size_t>(2 * m), zero));
            for (int a = 0; a < m; ++a) {
                const Jet c = cos(vars[static_cast<std::size_t>(a)]);
                const Jet s = sin(vars[static_cast<std::size_t>(a)]);
                j.position.push_back(radii[static_cast<std::size_t>(a)] * c);
                j.position.push_back(radii[static_cast<std::size_t>(a)] * s);
                j.frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(2 * a)] = -c;
                j.frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(2 * a + 1)] = -s;
            }
            return j;
        });
}

std::shared_ptr<const Immersion> clifford_torus(double angle) {
    require(angle > 0 && angle < std::numbers::pi / 2, "clifford_s3 angle must lie in (0, pi/2)");
    const double ca = std::cos(angle), sa = std::sin(angle);
    return std::make_shared<ChartImmersion>(
        describe("clifford_s3", {{"angle", angle}}), 2, Ambient{AmbientKind::sphere, 3}, torus_domain(2),
        [ca, sa](const JetVector& v) {
            const Jet cx = cos(v[0]), sx = sin(v[0]), cy = cos(v[1]), sy = sin(v[1]);
            return ImmersionJet{{ca * cx, ca * sx, sa * cy, sa * sy}, {{sa * cx, sa * sx, -ca * cy, -ca * sy}}};
        });
}

std::shared_ptr<const Immersion> bumpy_sphere(double radius, int harmonic, double amplitude) {
    require(radius > 0, "bumpy_sphere radius must be positive");
    require(harmonic >= 1 && harmonic <= 8, "bumpy_sphere harmonic must be 1..8");
    // |f| <= 2 on the unit sphere, so 1 + amplitude f stays positive.
    require(std::abs(amplitude) < 0.5, "bumpy_sphere amplitude must satisfy |amplitude| < 0.5");
    return std::make_shared<ChartImmersion>(
        describe("bumpy_sphere", {{"R", radius}, {"harmonic", harmonic}, {"amplitude", amplitude}}), 2,
        Ambient{AmbientKind::euclidean, 3}, sphere_domain(2), [=](const JetVector& vars) {
            const JetVector w = unit_sphere_point(vars);
            const Jet &z = w[0], &x = w[1], &y = w[2];
            Jet re = x, im = y, zk = z;
            for (int k = 1; k < harmonic; ++k) {
                const Jet next = re * x - im * y;
                im = re * y + im * x;
                re = next;
                zk *= z;
            }
            const Jet rho = radius * (1.0 + amplitude * (re + zk));
            JetVector psi = scaled(w, rho);
            JetVector d0, d1;
            for (const auto& c : psi) {
                d0.push_back(c.diff(0));
                d1.push_back(c.diff(1));
            }
            const JetVector n = cross(d0, d1);
            return ImmersionJet{std::move(psi), {scaled(n, inverse(sqrt(dot(n, n))))}};
        });
}

std::shared_ptr<const Immersion> small_sphere_in_sphere(int m, double r) {
    if (m < 1 || m > 3) throw LimitError("small_sphere_in_sphere supports m = 1, 2, 3");
    require(r > 0 && r <= 1, "small_sphere_in_sphere needs 0 < r <= 1");
    const double h = std::sqrt(1 - r * r);
    return std::make_shared<ChartImmersion>(
        describe("small_sphere_in_sphere", {{"m", m}, {"r", r}}), m, Ambient{AmbientKind::sphere, m + 1},
        sphere_domain(m), [=](const JetVector& vars) {
            const JetVector w = unit_sphere_point(vars);
            JetVector psi = scaled(w, r), nu = scaled(w, h);
            psi.emplace_back(m, h);
            nu.emplace_back(m, -r);
            return ImmersionJet{std::move(psi), {std::move(nu)}};
        });
}

}  // namespace gnt
