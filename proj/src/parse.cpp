#include "philoop/parse.hpp"

#include "philoop/errors.hpp"

#include <cctype>

namespace philoop {

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldPtr &ctx, bool allow_x) : s_(text), ctx_(ctx), allow_x_(allow_x) {}

    LaurentSeries parse()
    {
        LaurentSeries result;
        skip();
        if (at_end())
            throw ParseError("empty expression", pos_);
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError(std::string("expected '+' or '-', found '") + peek() + "'", pos_);
            }
            first = false;
            result += term() * Scalar(sign);
            skip();
        }
        return result;
    }

private:
    LaurentSeries term()
    {
        Scalar coeff(1);
        int xexp = 0;
        bool any = false;
        while (true) {
            skip();
            if (at_end())
                throw ParseError("expected a factor", pos_);
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= Scalar(rational());
            } else if (c == 'x') {
                if (!allow_x_)
                    throw ParseError("'x' is not allowed in a scalar", pos_);
                ++pos_;
                xexp += exponent(true);
            } else if (c == 'w') {
                if (!ctx_)
                    throw ParseError("'w' requires a cyclotomic order (--M)", pos_);
                ++pos_;
                coeff *= Scalar::zeta(ctx_, exponent(false));
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
            }
            any = true;
            skip();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any)
            throw ParseError("empty term", pos_);
        return LaurentSeries::monomial(coeff, xexp);
    }

    Rational rational()
    {
        Integer num = integer();
        skip();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip();
            std::size_t at = pos_;
            Integer den = integer();
            if (den == 0)
                throw ParseError("zero denominator", at);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }

    Integer integer()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected digits", pos_);
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    int exponent(bool allow_negative)
    {
        skip();
        if (at_end() || peek() != '^')
            return 1;
        ++pos_;
        skip();
        int sign = 1;
        if (!at_end() && peek() == '-') {
            if (!allow_negative)
                throw ParseError("negative exponent not allowed here", pos_);
            sign = -1;
            ++pos_;
        }
        std::size_t at = pos_;
        Integer v = integer();
        if (!v.fits_sint_p())
            throw ParseError("exponent out of range", at);
        return sign * static_cast<int>(v.get_si());
    }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    std::string_view s_;
    FieldPtr ctx_;
    bool allow_x_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentSeries parse_series(std::string_view text, const FieldPtr &ctx) { return Parser(text, ctx, true).parse(); }

Scalar parse_scalar(std::string_view text, const FieldPtr &ctx)
{
    auto s = Parser(text, ctx, false).parse();
    return s.terms().empty() ? Scalar(0) : s.terms().begin()->second;
}

} // namespace philoop
