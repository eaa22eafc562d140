#include "pdcover/geom/scalar.h"

#include "pdcover/geom/errors.h"

#include <cctype>
#include <cmath>
#include <string>

namespace pdc {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::VerticalEdge: return "VerticalEdge";
        case ErrorKind::SelfIntersecting: return "SelfIntersecting";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::Swallowed: return "Swallowed";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::NotCoverFree: return "NotCoverFree";
        case ErrorKind::NotPseudodisks: return "NotPseudodisks";
        case ErrorKind::IntervalUndefined: return "IntervalUndefined";
        case ErrorKind::Unbalanced: return "Unbalanced";
        case ErrorKind::SamplingFailed: return "SamplingFailed";
        case ErrorKind::MalformedEncoding: return "MalformedEncoding";
        case ErrorKind::BudgetTooLarge: return "BudgetTooLarge";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::HeavyMember: return "HeavyMember";
        case ErrorKind::NetValidationFailed: return "NetValidationFailed";
        case ErrorKind::ApexInside: return "ApexInside";
        case ErrorKind::SpecInvalid: return "SpecInvalid";
        case ErrorKind::CorpusInvalid: return "CorpusInvalid";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorKind::InvalidInput,
                "malformed number '" + std::string(text) + "'");
}

Scalar parse_integer(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) bad(whole);
    mpz_class z(std::string(s), 10);
    return Scalar(neg ? mpz_class(-z) : z);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty()) bad(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Scalar num = parse_integer(s.substr(0, slash), text);
        Scalar den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
        Scalar r = num / den;
        r.canonicalize();
        return r;
    }

    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        bool eneg = false;
        if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
            eneg = ex[0] == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) bad(text);
        exponent = std::stol(std::string(ex)) * (eneg ? -1 : 1);
        s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
            (ip.empty() && fp.empty()))
            bad(text);
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) bad(text);
        digits = std::string(s);
    }
    mpz_class z(digits, 10);
    if (neg) z = -z;
    long shift = exponent - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Scalar r = shift >= 0 ? Scalar(z * pow10) : Scalar(z, pow10);
    r.canonicalize();
    return r;
}

std::string format_scalar(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

double to_double(const Scalar& s) { return s.get_d(); }

Scalar snap(double v, long denom) {
    double scaled = std::nearbyint(v * static_cast<double>(denom));
    Scalar r{mpz_class(scaled), mpz_class(denom)};
    r.canonicalize();
    return r;
}

int sign(const Scalar& s) { return sgn(s); }

}  // namespace pdc
