#pragma once

#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mulab {

// Reports print every floating-point field with 17 significant digits so the
// value round-trips exactly and identical configs produce byte-identical
// files. No timestamps, no locale-dependent formatting.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// Minimal streaming JSON emitter with deterministic output. Keys are written
// in call order; the caller is responsible for schema stability.
class JsonWriter {
public:
    JsonWriter() { need_comma_.push_back(false); }

    void begin_object() { sep(); out_ << '{'; need_comma_.push_back(false); }
    void end_object()   { need_comma_.pop_back(); out_ << '}'; }
    void begin_array()  { sep(); out_ << '['; need_comma_.push_back(false); }
    void end_array()    { need_comma_.pop_back(); out_ << ']'; }

    void key(std::string_view k) {
        sep();
        quote(k);
        out_ << ':';
        after_key_ = true;
    }

    void value(double v)           { sep(); out_ << format_double(v); }
    void value(long long v)        { sep(); out_ << v; }
    void value(unsigned long long v) { sep(); out_ << v; }
    void value(int v)              { value(static_cast<long long>(v)); }
    void value(std::size_t v)      { value(static_cast<unsigned long long>(v)); }
    void value(bool b)             { sep(); out_ << (b ? "true" : "false"); }
    void value(std::string_view s) { sep(); quote(s); }
    void value(const char* s)      { value(std::string_view(s)); }
    void value(std::complex<double> z) {
        begin_array();
        value(z.real());
        value(z.imag());
        end_array();
    }

    void field(std::string_view k, double v)           { key(k); value(v); }
    void field(std::string_view k, long long v)        { key(k); value(v); }
    void field(std::string_view k, unsigned long long v) { key(k); value(v); }
    void field(std::string_view k, int v)              { key(k); value(v); }
    void field(std::string_view k, std::size_t v)      { key(k); value(v); }
    void field(std::string_view k, bool v)             { key(k); value(v); }
    void field(std::string_view k, std::string_view v) { key(k); value(v); }
    void field(std::string_view k, const char* v)      { key(k); value(v); }
    void field(std::string_view k, std::complex<double> v) { key(k); value(v); }

    std::string str() const { return out_.str(); }

private:
    void sep() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (need_comma_.back()) out_ << ',';
        need_comma_.back() = true;
    }

    void quote(std::string_view s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\n': out_ << "\\n"; break;
                case '\t': out_ << "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ << buf;
                    } else {
                        out_ << c;
                    }
            }
        }
        out_ << '"';
    }

    std::ostringstream out_;
    std::vector<bool> need_comma_;
    bool after_key_ = false;
};

// Deterministic CSV emission, same formatting rules as JSON reports.
class CsvWriter {
public:
    void cell(std::string_view s) { sep(); out_ << s; }
    void cell(double v)           { sep(); out_ << format_double(v); }
    void cell(long long v)        { sep(); out_ << v; }
    void cell(int v)              { cell(static_cast<long long>(v)); }
    void cell(std::size_t v)      { sep(); out_ << v; }
    void endrow() { out_ << '\n'; first_ = true; }
    std::string str() const { return out_.str(); }

private:
    void sep() {
        if (!first_) out_ << ',';
        first_ = false;
    }
    std::ostringstream out_;
    bool first_ = true;
};

} // namespace mulab
