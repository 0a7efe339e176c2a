#pragma once

// Deterministic text emission for CSV/JSON artifacts.  Every floating-point
// value is rendered as "%.17g" (17 significant digits, C locale), integers in
// decimal, object keys in insertion order -- so identical configs and seeds
// produce byte-identical files regardless of platform scheduling.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbqc {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline std::string format_int(long long v) { return std::to_string(v); }

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

/// Minimal JSON value with insertion-ordered objects.  Used for all JSON
/// *output*; parsing of config files is delegated to a real parser in the
/// CLI.  Doubles are always emitted via format_double so that emission is
/// reproducible byte-for-byte.
class JsonValue {
 public:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };

  JsonValue() = default;
  JsonValue(bool b) : kind_(Kind::Bool), bool_(b) {}
  JsonValue(int v) : kind_(Kind::Int), int_(v) {}
  JsonValue(long long v) : kind_(Kind::Int), int_(v) {}
  JsonValue(unsigned long long v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
  JsonValue(double v) : kind_(Kind::Double), dbl_(v) {}
  JsonValue(const char* s) : kind_(Kind::String), str_(s) {}
  JsonValue(std::string s) : kind_(Kind::String), str_(std::move(s)) {}

  static JsonValue array() {
    JsonValue v;
    v.kind_ = Kind::Array;
    return v;
  }
  static JsonValue object() {
    JsonValue v;
    v.kind_ = Kind::Object;
    return v;
  }

  Kind kind() const { return kind_; }

  JsonValue& push_back(JsonValue v) {
    require(Kind::Array, "push_back");
    arr_.push_back(std::move(v));
    return *this;
  }

  JsonValue& set(std::string key, JsonValue v) {
    require(Kind::Object, "set");
    obj_.emplace_back(std::move(key), std::move(v));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
  }

 private:
  void require(Kind k, const char* op) const {
    if (kind_ != k) throw std::logic_error(std::string("JsonValue: ") + op + " on wrong kind");
  }

  void dump_to(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<size_t>(indent) * depth, ' ');
    switch (kind_) {
      case Kind::Null: out += "null"; break;
      case Kind::Bool: out += bool_ ? "true" : "false"; break;
      case Kind::Int: out += format_int(int_); break;
      case Kind::Double: out += format_double(dbl_); break;
      case Kind::String:
        out += '"';
        out += json_escape(str_);
        out += '"';
        break;
      case Kind::Array:
        if (arr_.empty()) {
          out += "[]";
          break;
        }
        out += "[\n";
        for (size_t i = 0; i < arr_.size(); ++i) {
          out += pad;
          arr_[i].dump_to(out, indent, depth + 1);
          if (i + 1 < arr_.size()) out += ',';
          out += '\n';
        }
        out += close_pad;
        out += ']';
        break;
      case Kind::Object:
        if (obj_.empty()) {
          out += "{}";
          break;
        }
        out += "{\n";
        for (size_t i = 0; i < obj_.size(); ++i) {
          out += pad;
          out += '"';
          out += json_escape(obj_[i].first);
          out += "\": ";
          obj_[i].second.dump_to(out, indent, depth + 1);
          if (i + 1 < obj_.size()) out += ',';
          out += '\n';
        }
        out += close_pad;
        out += '}';
        break;
    }
  }

  Kind kind_ = Kind::Null;
  bool bool_ = false;
  long long int_ = 0;
  double dbl_ = 0.0;
  std::string str_;
  std::vector<JsonValue> arr_;
  std::vector<std::pair<std::string, JsonValue>> obj_;
};

/// CSV cell with minimal quoting (only when the cell contains a comma,
/// quote, or newline -- never triggered by numeric cells).
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  out += '\n';
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("io: cannot open output path '" + path + "'");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("io: write failed for '" + path + "'");
}

}  // namespace mbqc
