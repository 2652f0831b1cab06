#include "betacert/certifier.hpp"

#include <algorithm>
#include <unordered_map>

#include "betacert/errors.hpp"
#include "betacert/root_engine.hpp"

namespace betacert {

namespace {

// Cheap ceiling for deciding |g| > 1: a conjugate on the unit circle would
// otherwise drive refinement all the way to the global cap.
constexpr Precision kModulusPrecisionLimit = 2048;

ComplexBall conjugate_at(const NumberField& field, std::size_t index, Precision prec)
{
    const ComplexBall& root = field.roots()[index];
    if (root.precision() >= prec)
        return root;
    return refine_root(field.min_poly(), root, prec);
}

std::optional<bool> modulus_exceeds_one(const NumberField& field, std::size_t index, Precision limit)
{
    for (Precision p = field.roots()[index].precision(); p <= limit; p *= 2) {
        RealBall m = abs(conjugate_at(field, index, p));
        if (certainly_less(RealBall(1L, p), m))
            return true;
        if (certainly_less_equal(m, RealBall(1L, p)))
            return false;
    }
    return std::nullopt;
}

struct Decision {
    bool holds = false;
    mpq_class lower;
    mpq_class upper;
    Precision precision = 0;
};

// Decides |x'| > floor(b)/(|g| - 1) from exact x, refining until the balls
// separate. Requires |g| > 1.
std::optional<Decision> decide_at(const NumberField& field, std::size_t index, const FieldElement& x, Precision start)
{
    for (Precision p = std::max(start, kStartPrecision); p <= precision_cap(); p *= 2) {
        ComplexBall g = conjugate_at(field, index, p);
        RealBall modulus = abs(g);
        if (!certainly_less(RealBall(1L, p), modulus))
            continue;
        RealBall t = RealBall(field.floor_beta(), p) / (modulus - 1L);
        RealBall a = abs(embed(x, g, p));
        if (certainly_less(t, a))
            return Decision{true, a.lower_rational(), t.upper_rational(), p};
        if (certainly_less_equal(a, t))
            return Decision{false, a.lower_rational(), t.upper_rational(), p};
    }
    return std::nullopt;
}

std::size_t checked_index(const NumberField& field, std::size_t index)
{
    if (index >= field.degree())
        throw DomainError("conjugate index " + std::to_string(index) + " out of range for degree " +
                          std::to_string(field.degree()));
    if (index == field.real_root_index())
        throw DomainError("the conjugate must differ from the real root itself");
    return index;
}

std::optional<std::size_t> usable_conjugate(const NumberField& field, const CertifyOptions& options,
                                            std::string& problem)
{
    try {
        std::size_t index = options.conjugate_index ? checked_index(field, *options.conjugate_index)
                                                    : choose_conjugate(field, options.conjugate);
        std::optional<bool> outside = modulus_exceeds_one(field, index, kModulusPrecisionLimit);
        if (outside && *outside)
            return index;
        problem = outside ? "chosen conjugate lies in the closed unit disk"
                          : "could not separate the chosen conjugate from the unit circle";
    } catch (const DomainError& e) {
        problem = e.what();
    }
    return std::nullopt;
}

} // namespace

RealBall threshold(const NumberField& field, const ComplexBall& conjugate)
{
    ComplexBall g = conjugate;
    for (Precision p = conjugate.precision();; p *= 2) {
        if (p > precision_cap())
            throw PrecisionExhausted("|g| > 1", precision_cap());
        if (p > g.precision())
            g = refine_root(field.min_poly(), g, p);
        RealBall modulus = abs(g);
        if (certainly_less(RealBall(1L, p), modulus))
            return RealBall(field.floor_beta(), p) / (modulus - 1L);
        if (certainly_less_equal(modulus, RealBall(1L, p)))
            throw DomainError("conjugate " + conjugate.to_string(12) + " lies in the closed unit disk");
    }
}

std::size_t choose_conjugate(const NumberField& field, ConjugateChoice choice)
{
    return choice == ConjugateChoice::closest ? companion_conjugate_index(field) : max_modulus_conjugate_index(field);
}

CertifyResult certify_non_parry(const NumberField& field, const CertifyOptions& options)
{
    std::string problem;
    const std::optional<std::size_t> index = usable_conjugate(field, options, problem);

    Precision prec = std::max(options.start_precision, kStartPrecision);
    OrbitWalker walker(field, prec);
    std::unordered_map<FieldElement, std::size_t> seen;
    seen.emplace(walker.state(), 0);
    std::vector<long> digits;
    std::optional<std::size_t> m0;
    std::size_t cap = options.max_steps ? *options.max_steps
                                        : std::max<std::size_t>(200, default_expansion_steps(field));

    std::optional<ComplexBall> g;
    std::optional<RealBall> t;
    std::optional<ComplexBall> z;
    bool fresh = true;
    auto load = [&](Precision p) {
        g = conjugate_at(field, *index, p);
        t = RealBall(field.floor_beta(), p) / (abs(*g) - 1L);
    };
    if (index) {
        load(prec);
        z = ComplexBall(1L, prec);
    }

    while (walker.index() < cap) {
        long d = walker.advance();
        digits.push_back(d);
        std::size_t k = walker.index();
        if (!m0 && k >= 2 && d != 0) {
            m0 = k;
            if (!options.max_steps)
                cap = std::max<std::size_t>(200, 4 * k);
        }
        auto [it, inserted] = seen.emplace(walker.state(), k);
        if (!inserted) {
            std::size_t p = it->second;
            ParryEvidence evidence;
            evidence.periodicity = Periodicity{p, k - p};
            evidence.preperiod_word.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(p));
            evidence.period_word.assign(digits.begin() + static_cast<std::ptrdiff_t>(p), digits.end());
            return evidence;
        }
        if (!index)
            continue;
        *z = *g * *z - d;
        fresh = false;
        for (;;) {
            RealBall a = abs(*z);
            if (certainly_less(*t, a)) {
                NonParryCertificate cert{field,
                                         *index,
                                         k,
                                         a.lower_rational(),
                                         t->upper_rational(),
                                         std::max(prec, walker.precision()),
                                         digits,
                                         options.assumptions};
                return cert;
            }
            if (certainly_less_equal(a, *t))
                break;
            if (fresh) {
                prec *= 2;
                if (prec > precision_cap())
                    throw PrecisionExhausted("divergence inequality at step " + std::to_string(k), precision_cap());
                load(prec);
            }
            z = embed(walker.state(), *g, prec);
            fresh = true;
        }
    }
    std::string reason = index ? "no certificate within " + std::to_string(cap) + " steps"
                               : "no usable conjugate (" + problem + ") and no repeat within " +
                                     std::to_string(cap) + " steps";
    return Inconclusive{reason, walker.index()};
}

bool verify_certificate(const NonParryCertificate& cert)
{
    try {
        const NumberField& field = cert.field;
        if (cert.conjugate_index >= field.degree() || cert.conjugate_index == field.real_root_index())
            return false;
        if (cert.k == 0 || !(cert.lower_bound_on_orbit > cert.upper_bound_on_threshold))
            return false;
        Precision p = 2 * std::max(cert.precision_used, kStartPrecision);
        std::optional<bool> outside = modulus_exceeds_one(field, cert.conjugate_index, std::max(p, kModulusPrecisionLimit));
        if (!outside || !*outside)
            return false;
        OrbitWalker walker(field, p);
        for (std::size_t i = 0; i < cert.k; ++i) {
            long d = walker.advance();
            if (!cert.digits.empty() && (i >= cert.digits.size() || cert.digits[i] != d))
                return false;
        }
        std::optional<Decision> decision = decide_at(field, cert.conjugate_index, walker.state(), p);
        if (!decision || !decision->holds)
            return false;
        // The recorded bounds must be consistent with the fresh enclosures.
        RealBall g = abs(conjugate_at(field, cert.conjugate_index, decision->precision));
        RealBall t = RealBall(field.floor_beta(), decision->precision) / (g - 1L);
        RealBall a = abs(embed(walker.state(), conjugate_at(field, cert.conjugate_index, decision->precision),
                               decision->precision));
        return cert.lower_bound_on_orbit <= a.upper_rational() && t.lower_rational() <= cert.upper_bound_on_threshold;
    } catch (const std::exception&) {
        return false;
    }
}

std::optional<bool> inequality_holds_at(const NumberField& field, std::size_t conjugate_index, std::size_t k)
{
    checked_index(field, conjugate_index);
    std::optional<bool> outside = modulus_exceeds_one(field, conjugate_index, precision_cap());
    if (!outside)
        return std::nullopt;
    if (!*outside)
        throw DomainError("chosen conjugate lies in the closed unit disk");
    OrbitWalker walker(field);
    while (walker.index() < k)
        walker.advance();
    std::optional<Decision> decision = decide_at(field, conjugate_index, walker.state(), kStartPrecision);
    if (!decision)
        return std::nullopt;
    return decision->holds;
}

GoalCheck check_goal(unsigned n)
{
    if (n < 4)
        throw DomainError("the goal inequality is stated for n >= 4");
    NumberField field = make_number_field(IntPolynomial::selmer(n), Irreducibility::asserted);
    GoalCheck out;
    out.n = n;
    OrbitWalker walker(field);
    while (out.m0 == 0) {
        long d = walker.advance();
        if (walker.index() >= 2 && d != 0)
            out.m0 = walker.index();
    }
    out.index = 2 * out.m0 - 2;
    while (walker.index() < out.index)
        walker.advance();

    std::vector<mpz_class> closed(out.index + 1);
    closed[out.index] += 1;
    closed[out.index - 1] -= 1;
    closed[out.m0 - 2] -= 1;
    out.closed_form_matches = poly_reduce(IntPolynomial(std::move(closed)), field) == walker.state();

    std::size_t index = companion_conjugate_index(field);
    std::optional<Decision> decision = decide_at(field, index, walker.state(), kStartPrecision);
    if (!decision)
        throw PrecisionExhausted("goal inequality for n = " + std::to_string(n), precision_cap());
    out.holds = decision->holds;
    out.lower_bound_on_orbit = decision->lower;
    out.upper_bound_on_threshold = decision->upper;
    return out;
}

bool goal_inequality(unsigned n) { return check_goal(n).holds; }

} // namespace betacert
