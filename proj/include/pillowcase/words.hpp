#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pillowcase/quat.hpp"

namespace pcase {

enum class Variant { earring, bypass };

std::string to_string(Variant v);
Variant parse_variant(std::string_view name);

// Letters use lowercase for a generator and uppercase for its inverse.
// a b f h p q are the free generators; c d e g expand to their defining words.
struct Letter {
    char gen;
    int exp;
    bool operator==(const Letter&) const = default;
};

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::string_view text);

    Word inverse() const;
    std::string str() const;
    bool operator==(const Word&) const = default;
};

Word operator*(const Word& x, const Word& y);
Word commutator(const Word& x, const Word& y);
Word free_reduce(Word w);

namespace words {
Word lambda_p();
Word lambda_q();
Word c();
Word d();
Word e();
Word g();
Word w();
}  // namespace words

struct Presentation {
    std::string name;
    std::vector<char> generators;
    std::vector<Word> relators;
};

Presentation presentation_pi();        // earring tangle
Presentation presentation_pi_prime();  // bypass tangle
Presentation presentation_pi0();
Presentation presentation_pi1();

struct ChartPoint {
    double s = 0, gamma = 0, theta = 0, nu = 0, tau = 0;
    // Angles reduced to [0, 2pi).
    ChartPoint normalized() const;
};

struct Rep {
    Quat a = QI, b = QI, f = QI, h = QJ, p = ONE, q = ONE;
    Variant variant = Variant::earring;
    double s = 0;
    std::optional<ChartPoint> source;

    const Quat& get(char gen) const;
};

double wrap_angle(double t);  // to [0, 2pi)

Rep embed_L(const ChartPoint& pt, Variant variant = Variant::earring);
// The four reps with a=i, b=j, f=e1 i, h=e2 j, p=1, q=exp(s e1 e2 j).
Rep explicit_point(double s, int e1, int e2, Variant variant = Variant::earring);

Quat eval_word(const Rep& rep, const Word& word);

using Pair = std::array<double, 2>;

Pair G(const Rep& rep);
Pair Gp(const Rep& rep);
Pair G(const ChartPoint& pt);
Pair Gp(const ChartPoint& pt);
// G for the earring, G' for the bypass.
Pair defining(Variant v, const Rep& rep);
Pair defining(Variant v, const ChartPoint& pt);
// (G1/s, G2): the rescaled system whose zero set is regular at small s.
Pair defining_hat(Variant v, const ChartPoint& pt);

struct IdentityReport {
    double shuffle = 0;       // p' a f' q f against h p q h' a
    double relator_p = 0;     // [p, bh]
    double relator_q = 0;     // [q, f a' h]
    double perturb_p = 0;
    double perturb_q = 0;
    double g_plus_f = 0;      // G + F
    double max() const;
};

IdentityReport check_identities(const ChartPoint& pt);

// Value of w = [a' h q' p', h]. Throws std::invalid_argument for the bypass.
Quat w2_value(const Rep& rep);
Quat w2_value(Variant v, const ChartPoint& pt);

// (Re b a', Re f a', Re b f', Re c d', Re f d', Re c f').
std::array<double, 6> characters(const Rep& rep);

}  // namespace pcase
