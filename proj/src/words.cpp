#include "pillowcase/words.hpp"

#include <cctype>
#include <numbers>
#include <stdexcept>

namespace pcase {

std::string to_string(Variant v) { return v == Variant::earring ? "earring" : "bypass"; }

Variant parse_variant(std::string_view name) {
    if (name == "earring") return Variant::earring;
    if (name == "bypass") return Variant::bypass;
    throw std::invalid_argument("unknown variant: " + std::string(name));
}

Word::Word(std::string_view text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (std::string_view("abfhpqcdeg").find(lower) == std::string_view::npos)
            throw std::invalid_argument(std::string("bad generator: ") + ch);
        letters.push_back({lower, std::islower(static_cast<unsigned char>(ch)) ? 1 : -1});
    }
    *this = free_reduce(std::move(*this));
}

Word Word::inverse() const {
    Word r;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->gen, -it->exp});
    return r;
}

std::string Word::str() const {
    std::string s;
    for (const Letter& l : letters)
        s += l.exp > 0 ? l.gen : static_cast<char>(std::toupper(static_cast<unsigned char>(l.gen)));
    return s;
}

Word free_reduce(Word w) {
    std::vector<Letter> out;
    for (const Letter& l : w.letters) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    w.letters = std::move(out);
    return w;
}

Word operator*(const Word& x, const Word& y) {
    Word r = x;
    r.letters.insert(r.letters.end(), y.letters.begin(), y.letters.end());
    return free_reduce(std::move(r));
}

Word commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

namespace words {
Word lambda_p() { return Word("bh"); }
Word lambda_q() { return Word("fAh"); }
Word c() { return Word("QPbpq"); }
Word d() { return Word("QPBpbaFqf"); }
Word e() { return Word("baF"); }
Word g() { return Word("QbaFq"); }
Word w() { return commutator(Word("AhQP"), Word("h")); }
}  // namespace words

Presentation presentation_pi() {
    return {"Pi", {'a', 'b', 'f', 'h', 'p', 'q'},
            {commutator(Word("p"), words::lambda_p()), commutator(Word("q"), words::lambda_q())}};
}

Presentation presentation_pi_prime() {
    Presentation p = presentation_pi();
    p.name = "Pi'";
    return p;
}

Presentation presentation_pi0() { return {"Pi0", {'a', 'b', 'e', 'f'}, {Word("baFE")}}; }

Presentation presentation_pi1() { return {"Pi1", {'c', 'd', 'f', 'g'}, {Word("cdFG")}}; }

double wrap_angle(double t) {
    constexpr double twopi = 2 * std::numbers::pi;
    double r = std::fmod(t, twopi);
    if (r < 0) r += twopi;
    if (r >= twopi) r -= twopi;
    return r;
}

ChartPoint ChartPoint::normalized() const { return {s, wrap_angle(gamma), wrap_angle(theta), nu, wrap_angle(tau)}; }

const Quat& Rep::get(char gen) const {
    switch (gen) {
        case 'a': return a;
        case 'b': return b;
        case 'f': return f;
        case 'h': return h;
        case 'p': return p;
        case 'q': return q;
        default: throw std::invalid_argument(std::string("not a free generator: ") + gen);
    }
}

Rep embed_L(const ChartPoint& pt, Variant variant) {
    if (std::abs(pt.nu) > 0.5) throw std::domain_error("embed_L: |nu| > 1/2");
    Rep r;
    r.variant = variant;
    r.s = pt.s;
    r.source = pt;
    r.a = QI;
    r.b = qexp(pt.gamma * QK) * QI;
    r.f = qexp(pt.theta * QK) * QI;
    r.h = pt.nu * QI + std::sqrt(1 - pt.nu * pt.nu) * (qexp(pt.tau * QI) * QJ);
    r.p = qexp(pt.s * ima(r.b * r.h));
    r.q = qexp(pt.s * ima(qexp(pt.theta * QK) * r.h));
    return r;
}

Rep explicit_point(double s, int e1, int e2, Variant variant) {
    Rep r;
    r.variant = variant;
    r.s = s;
    r.a = QI;
    r.b = QJ;
    r.f = static_cast<double>(e1) * QI;
    r.h = static_cast<double>(e2) * QJ;
    r.p = ONE;
    r.q = qexp(static_cast<double>(s * e1 * e2) * QJ);
    return r;
}

namespace {

void append(const Rep& rep, const Word& w, int exp, Quat& acc, int& count);

void append_letter(const Rep& rep, const Letter& l, Quat& acc, int& count) {
    switch (l.gen) {
        case 'c': append(rep, words::c(), l.exp, acc, count); return;
        case 'd': append(rep, words::d(), l.exp, acc, count); return;
        case 'e': append(rep, words::e(), l.exp, acc, count); return;
        case 'g': append(rep, words::g(), l.exp, acc, count); return;
        default: break;
    }
    const Quat& x = rep.get(l.gen);
    acc = acc * (l.exp > 0 ? x : conj(x));
    if (++count % 64 == 0) acc = normalized(acc);
}

void append(const Rep& rep, const Word& w, int exp, Quat& acc, int& count) {
    const Word use = exp > 0 ? w : w.inverse();
    for (const Letter& l : use.letters) append_letter(rep, l, acc, count);
}

}  // namespace

Quat eval_word(const Rep& rep, const Word& word) {
    Quat acc = ONE;
    int count = 0;
    for (const Letter& l : word.letters) append_letter(rep, l, acc, count);
    return acc;
}

Pair G(const Rep& r) {
    const Quat hb = conj(r.h);
    const Quat pqha = r.p * r.q * hb * r.a;
    return {real_part(pqha * hb), real_part(pqha)};
}

Pair Gp(const Rep& r) {
    const Quat hb = conj(r.h);
    const Quat pq = r.p * r.q;
    return {real_part(conj(pq) * r.h * pq * hb * r.a), real_part(hb * r.a)};
}

Pair G(const ChartPoint& pt) { return G(embed_L(pt)); }
Pair Gp(const ChartPoint& pt) { return Gp(embed_L(pt, Variant::bypass)); }

Pair defining(Variant v, const Rep& rep) { return v == Variant::earring ? G(rep) : Gp(rep); }
Pair defining(Variant v, const ChartPoint& pt) { return defining(v, embed_L(pt, v)); }

Pair defining_hat(Variant v, const ChartPoint& pt) {
    Pair g = defining(v, pt);
    g[0] /= pt.s;
    return g;
}

double IdentityReport::max() const {
    return std::max({shuffle, relator_p, relator_q, perturb_p, perturb_q, g_plus_f});
}

IdentityReport check_identities(const ChartPoint& pt) {
    const Rep r = embed_L(pt);
    IdentityReport rep;
    const Quat lhs = eval_word(r, Word("PaFqf"));
    const Quat rhs = eval_word(r, Word("hpqHa"));
    rep.shuffle = dist(lhs, rhs);
    rep.relator_p = dist(eval_word(r, commutator(Word("p"), words::lambda_p())), ONE);
    rep.relator_q = dist(eval_word(r, commutator(Word("q"), words::lambda_q())), ONE);
    rep.perturb_p = dist(r.p, qexp(r.s * ima(eval_word(r, words::lambda_p()))));
    rep.perturb_q = dist(r.q, qexp(r.s * ima(eval_word(r, words::lambda_q()))));
    const Pair g = G(r);
    const double f2 = real_part(lhs);
    const double f3 = real_part(r.h * lhs);
    rep.g_plus_f = std::max(std::abs(g[0] + f2), std::abs(g[1] + f3));
    return rep;
}

Quat w2_value(const Rep& rep) {
    if (rep.variant == Variant::bypass) throw std::invalid_argument("w2_value: no w2 condition for the bypass tangle");
    return eval_word(rep, words::w());
}

Quat w2_value(Variant v, const ChartPoint& pt) { return w2_value(embed_L(pt, v)); }

std::array<double, 6> characters(const Rep& r) {
    const Quat c = eval_word(r, words::c());
    const Quat d = eval_word(r, words::d());
    return {real_part(r.b * conj(r.a)), real_part(r.f * conj(r.a)), real_part(r.b * conj(r.f)),
            real_part(c * conj(d)),     real_part(r.f * conj(d)),     real_part(c * conj(r.f))};
}

}  // namespace pcase
