#pragma once

#include <string>
#include <vector>

namespace cherry {

// Streaming JSON emitter with deterministic output: insertion order is
// preserved and every double is printed with 17 significant digits, so a
// given document serializes to identical bytes on every run.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(long long v);
    JsonWriter& value(int v) { return value((long long)v); }
    JsonWriter& value(std::size_t v) { return value((long long)v); }
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& null();

    template <typename T>
    JsonWriter& kv(const std::string& k, const T& v) {
        key(k);
        return value(v);
    }

    std::string str() const { return out_; }

    static std::string format_double(double v);

private:
    void separator();

    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

}  // namespace cherry
