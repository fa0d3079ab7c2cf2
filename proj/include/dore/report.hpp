#ifndef DORE_REPORT_HPP
#define DORE_REPORT_HPP

#include <memory>
#include <string>
#include <vector>

namespace dore {

// Ordered key-value document with nested lists. Insertion order is the
// rendering order, so reports are byte-stable across runs.
class ReportNode {
public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, const char* value) { put(key, std::string(value)); }
    void put(const std::string& key, bool value) { put(key, value ? std::string("pass") : std::string("fail")); }
    void put_raw_bool(const std::string& key, bool value) { put(key, value ? std::string("true") : std::string("false")); }
    void put(const std::string& key, long long value) { put(key, std::to_string(value)); }
    void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }
    void put_child(const std::string& key, ReportNode child);
    // Appends one node to the list stored under key.
    void add_item(const std::string& key, ReportNode item);

    bool empty() const { return entries_.empty(); }

    // Structured rendering: stable "key: value" lines, two-space indent,
    // list items introduced by "- ".
    std::string render() const;

private:
    struct Entry {
        enum Kind { Value, Child, List } kind = Value;
        std::string key;
        std::string value;
        std::shared_ptr<ReportNode> child;
        std::vector<ReportNode> list;
    };
    std::vector<Entry> entries_;

    static void render_into(const ReportNode& n, std::string& out, std::size_t indent);
};

} // namespace dore

#endif
