#include "dore/report.hpp"

namespace dore {

void ReportNode::put(const std::string& key, const std::string& value) {
    Entry e;
    e.kind = Entry::Value;
    e.key = key;
    e.value = value;
    entries_.push_back(std::move(e));
}

void ReportNode::put_child(const std::string& key, ReportNode child) {
    Entry e;
    e.kind = Entry::Child;
    e.key = key;
    e.child = std::make_shared<ReportNode>(std::move(child));
    entries_.push_back(std::move(e));
}

void ReportNode::add_item(const std::string& key, ReportNode item) {
    for (Entry& e : entries_) {
        if (e.kind == Entry::List && e.key == key) {
            e.list.push_back(std::move(item));
            return;
        }
    }
    Entry e;
    e.kind = Entry::List;
    e.key = key;
    e.list.push_back(std::move(item));
    entries_.push_back(std::move(e));
}

void ReportNode::render_into(const ReportNode& n, std::string& out, std::size_t indent) {
    const std::string pad(indent, ' ');
    for (const Entry& e : n.entries_) {
        switch (e.kind) {
        case Entry::Value:
            out += pad + e.key + ": " + e.value + "\n";
            break;
        case Entry::Child:
            out += pad + e.key + ":\n";
            render_into(*e.child, out, indent + 2);
            break;
        case Entry::List:
            out += pad + e.key + ":\n";
            for (const ReportNode& item : e.list) {
                out += pad + "-\n";
                render_into(item, out, indent + 2);
            }
            break;
        }
    }
}

std::string ReportNode::render() const {
    std::string out;
    render_into(*this, out, 0);
    return out;
}

} // namespace dore
