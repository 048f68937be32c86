#include "qsign/qseries.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qsign {

ProductSpec::ProductSpec(std::vector<ProductFactor> factors) : factors_(std::move(factors)) {
    L_ = 1;
    Omega_ = 0;
    for (const auto& f : factors_) {
        if (f.m < 1 || f.m >= f.n)
            throw std::invalid_argument("ProductSpec: need 1 <= m < n");
        if (f.u == 0)
            throw std::invalid_argument("ProductSpec: u must be nonzero");
        L_ = lcm_long(L_, f.n);
        Omega_ += Rational(f.u) * (Rational(12 * f.m * f.m, f.n) - 12 * f.m + 2 * f.n);
    }
}

ProductSpec ProductSpec::parse(const std::string& text) {
    static const std::pair<const char*, const char*> presets[] = {
        {"Q5", "1:5:1,2:5:-1"},   {"Q6", "1:6:1"},
        {"Q8", "1:8:1,3:8:-1"},   {"Q10", "1:10:1,3:10:-1"},
        {"Q12", "1:12:1,5:12:-1"}, {"G3", "1:3:1"},
    };
    for (const auto& [name, body] : presets)
        if (text == name) return parse(body);
    if (text.rfind("BORWEIN:", 0) == 0) {
        long p = std::stol(text.substr(8));
        if (p < 3 || p % 2 == 0)
            throw std::invalid_argument("BORWEIN:p requires odd p >= 3");
        std::vector<ProductFactor> fs;
        for (long j = 1; 2 * j < p; ++j) fs.push_back({j, p, 1});
        return ProductSpec(std::move(fs));
    }
    std::vector<ProductFactor> fs;
    std::stringstream ss(text);
    std::string triple;
    while (std::getline(ss, triple, ',')) {
        long v[3];
        std::stringstream ts(triple);
        std::string part;
        int i = 0;
        while (std::getline(ts, part, ':')) {
            if (i >= 3) throw std::invalid_argument("bad factor triple: " + triple);
            v[i++] = std::stol(part);
        }
        if (i != 3) throw std::invalid_argument("bad factor triple: " + triple);
        fs.push_back({v[0], v[1], v[2]});
    }
    if (fs.empty()) throw std::invalid_argument("empty product spec");
    return ProductSpec(std::move(fs));
}

ProductSpec ProductSpec::inverse() const {
    auto fs = factors_;
    for (auto& f : fs) f.u = -f.u;
    return ProductSpec(std::move(fs));
}

std::string ProductSpec::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << ",";
        os << factors_[i].m << ":" << factors_[i].n << ":" << factors_[i].u;
    }
    return os.str();
}

QSeries series_mul(const QSeries& a, const QSeries& b, long order) {
    QSeries out(static_cast<std::size_t>(order) + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i) {
        if (a[i] == 0) continue;
        std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(order) + 1 - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

QSeries series_inverse(const QSeries& a, long order) {
    if (a.empty() || a[0] != 1)
        throw std::domain_error("series_inverse: constant term must be 1");
    QSeries inv(static_cast<std::size_t>(order) + 1, Rational(0));
    inv[0] = 1;
    for (long n = 1; n <= order; ++n) {
        Rational s(0);
        for (long k = 1; k <= n && k < static_cast<long>(a.size()); ++k)
            if (a[static_cast<std::size_t>(k)] != 0)
                s += a[static_cast<std::size_t>(k)] * inv[static_cast<std::size_t>(n - k)];
        inv[static_cast<std::size_t>(n)] = -s;
    }
    return inv;
}

QSeries series_log(const QSeries& a, long order) {
    if (a.empty() || a[0] != 1)
        throw std::domain_error("series_log: constant term must be 1");
    /* l' = a'/a, i.e. n*l_n = n*a_n - sum_{k=1}^{n-1} k*l_k*a_{n-k}. */
    QSeries l(static_cast<std::size_t>(order) + 1, Rational(0));
    for (long n = 1; n <= order; ++n) {
        Rational s = n < static_cast<long>(a.size())
                         ? Rational(n) * a[static_cast<std::size_t>(n)]
                         : Rational(0);
        for (long k = 1; k < n; ++k) {
            long j = n - k;
            if (j < static_cast<long>(a.size()) && a[static_cast<std::size_t>(j)] != 0 &&
                l[static_cast<std::size_t>(k)] != 0)
                s -= Rational(k) * l[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(j)];
        }
        l[static_cast<std::size_t>(n)] = s / n;
    }
    return l;
}

QSeries series_exp(const QSeries& a, long order) {
    if (!a.empty() && a[0] != 0)
        throw std::domain_error("series_exp: constant term must be 0");
    QSeries f(static_cast<std::size_t>(order) + 1, Rational(0));
    f[0] = 1;
    for (long n = 1; n <= order; ++n) {
        Rational s(0);
        for (long j = 1; j <= n && j < static_cast<long>(a.size()); ++j)
            if (a[static_cast<std::size_t>(j)] != 0)
                s += Rational(j) * a[static_cast<std::size_t>(j)] *
                     f[static_cast<std::size_t>(n - j)];
        f[static_cast<std::size_t>(n)] = s / n;
    }
    return f;
}

namespace {

/* Multiply s by (1 - q^e) in place, truncated. */
void mul_binomial(QSeries& s, long e) {
    if (e > static_cast<long>(s.size()) - 1) return;
    for (long j = static_cast<long>(s.size()) - 1; j >= e; --j)
        s[static_cast<std::size_t>(j)] -= s[static_cast<std::size_t>(j - e)];
}

}  // namespace

QSeries expand_integer_product(const ProductSpec& spec, long order) {
    if (order < 0) throw std::domain_error("expand_integer_product: order must be >= 0");
    QSeries pos(static_cast<std::size_t>(order) + 1, Rational(0));
    QSeries neg = pos;
    pos[0] = 1;
    neg[0] = 1;
    for (const auto& f : spec.factors()) {
        QSeries& dst = f.u > 0 ? pos : neg;
        long reps = f.u > 0 ? f.u : -f.u;
        for (long r = 0; r < reps; ++r) {
            for (long base : {f.m, f.n - f.m}) {
                for (long e = base; e <= order; e += f.n) mul_binomial(dst, e);
            }
        }
    }
    bool neg_trivial = true;
    for (std::size_t j = 1; j < neg.size(); ++j)
        if (neg[j] != 0) { neg_trivial = false; break; }
    if (neg_trivial) return pos;
    return series_mul(pos, series_inverse(neg, order), order);
}

QSeries log_weights(const ProductSpec& spec, long order) {
    QSeries l(static_cast<std::size_t>(order) + 1, Rational(0));
    for (const auto& f : spec.factors()) {
        for (long base : {f.m, f.n - f.m}) {
            for (long e = base; e <= order; e += f.n) {
                for (long t = 1; t * e <= order; ++t)
                    l[static_cast<std::size_t>(t * e)] -= Rational(f.u, t);
            }
        }
    }
    return l;
}

std::vector<Integer> log_weights_scaled(const ProductSpec& spec, long order) {
    auto l = log_weights(spec, order);
    std::vector<Integer> g(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) {
        Rational scaled = Rational(static_cast<long>(j)) * l[j];
        if (scaled.get_den() != 1)
            throw std::logic_error("log_weights_scaled: j*l_j not an integer");
        g[j] = scaled.get_num();
    }
    return g;
}

QSeries DeltaSeries::eval_at(const Rational& delta) const {
    QSeries out(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) out[n] = coeffs[n].eval(delta);
    return out;
}

DeltaSeries expand_real_power(const ProductSpec& spec, long order) {
    if (order < 0) throw std::domain_error("expand_real_power: order must be >= 0");
    auto g = log_weights_scaled(spec, order);
    DeltaSeries ds;
    ds.spec = spec;
    ds.order = order;
    ds.coeffs.resize(static_cast<std::size_t>(order) + 1);
    ds.coeffs[0] = DeltaPolynomial::constant(1);
    for (long n = 1; n <= order; ++n) {
        DeltaPolynomial acc;
        for (long j = 1; j <= n; ++j) {
            if (g[static_cast<std::size_t>(j)] == 0) continue;
            DeltaPolynomial term = ds.coeffs[static_cast<std::size_t>(n - j)];
            term.mul_scalar(Rational(g[static_cast<std::size_t>(j)]));
            acc += term;
        }
        acc.mul_scalar(Rational(1, n));
        acc.shift_up(1);  // the outer factor of delta
        ds.coeffs[static_cast<std::size_t>(n)] = std::move(acc);
    }
    return ds;
}

QSeries coefficients_at(const ProductSpec& spec, const Rational& delta, long order) {
    if (order < 0) throw std::domain_error("coefficients_at: order must be >= 0");
    auto g = log_weights_scaled(spec, order);
    QSeries f(static_cast<std::size_t>(order) + 1, Rational(0));
    f[0] = 1;
    Rational t;
    for (long n = 1; n <= order; ++n) {
        Rational s(0);
        for (long j = 1; j <= n; ++j) {
            const Integer& gj = g[static_cast<std::size_t>(j)];
            if (gj == 0) continue;
            t = f[static_cast<std::size_t>(n - j)];
            t *= Rational(gj);
            s += t;
        }
        s *= delta;
        s /= n;
        f[static_cast<std::size_t>(n)] = std::move(s);
    }
    return f;
}

}  // namespace qsign
