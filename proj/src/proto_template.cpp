#include "ldpc/proto_template.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ldpc/io.hpp"

namespace ldpc {

int ProtoTemplate::designable_index(int j, int i) const {
    auto it = std::lower_bound(designable.begin(), designable.end(), std::pair<int, int>{j, i});
    if (it == designable.end() || *it != std::pair<int, int>{j, i}) return -1;
    return static_cast<int>(it - designable.begin());
}

ProtoTemplate canonical_template(int n) {
    if (n < 8 || n % 4 != 0)
        throw std::invalid_argument("canonical_template: n must be >= 8 and divisible by 4");
    int q = n / 4;

    ProtoTemplate t;
    t.rows = n / 2;
    t.cols = n;
    t.info_count = n / 2;
    t.status.assign(static_cast<size_t>(t.rows) * t.cols, EntryStatus::Fixed0);

    auto put = [&](int j, int i, EntryStatus s) {
        t.status[static_cast<size_t>(j) * t.cols + i] = s;
    };

    // fixed skeleton: target diagonal plus one opposite-block parity anchor
    for (int j = 0; j < 2 * q; ++j) {
        put(j, j, EntryStatus::Fixed1);
        put(j, 2 * q + j, EntryStatus::Fixed1);
    }
    // rows targeting block-0 info VNs: free entries on the opposite block and
    // on already-resolved same-block info columns
    for (int j = 0; j < q; ++j) {
        for (int i = q; i < 2 * q; ++i) put(j, i, EntryStatus::Designable);
        for (int i = 0; i < j; ++i) put(j, i, EntryStatus::Designable);
        for (int tcol = 0; tcol < q; ++tcol)
            if (tcol != j) put(j, 2 * q + tcol, EntryStatus::Designable);
    }
    // rows targeting block-1 info VNs, mirrored
    for (int tt = 0; tt < q; ++tt) {
        int j = q + tt;
        for (int i = 0; i < q; ++i) put(j, i, EntryStatus::Designable);
        for (int i = 0; i < tt; ++i) put(j, q + i, EntryStatus::Designable);
        for (int u = 0; u < q; ++u)
            if (u != tt) put(j, 3 * q + u, EntryStatus::Designable);
    }

    for (int j = 0; j < t.rows; ++j)
        for (int i = 0; i < t.cols; ++i)
            if (t.status_at(j, i) == EntryStatus::Designable)
                t.designable.emplace_back(j, i);

    std::vector<int> assign(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        assign[static_cast<size_t>(i)] = (i >= q && i < 3 * q) ? 1 : 0;
    t.mapping = BlockMapping(std::move(assign), 2);

    t.row_weight_rows = {q - 2, q - 1, 2 * q - 2, 2 * q - 1};
    return t;
}

Protograph instantiate(const Candidate& c) {
    if (!c.tmpl) throw std::invalid_argument("instantiate: candidate has no template");
    const ProtoTemplate& t = *c.tmpl;
    if (c.bits.size() != t.designable.size())
        throw std::invalid_argument("instantiate: bit count does not match designable set");
    std::vector<uint8_t> entries(static_cast<size_t>(t.rows) * t.cols, 0);
    for (size_t idx = 0; idx < t.status.size(); ++idx)
        if (t.status[idx] == EntryStatus::Fixed1) entries[idx] = 1;
    for (size_t d = 0; d < c.bits.size(); ++d) {
        if (c.bits[d] > 1)
            throw std::invalid_argument("instantiate: designable bits must be 0 or 1");
        auto [j, i] = t.designable[d];
        entries[static_cast<size_t>(j) * t.cols + i] = c.bits[d];
    }
    return Protograph(t.rows, t.cols, t.info_count, std::move(entries));
}

void repair_row_weight(Candidate& c, Rng* rng) {
    const ProtoTemplate& t = *c.tmpl;
    for (int row : t.row_weight_rows) {
        std::vector<int> slots;
        bool satisfied = false;
        for (size_t d = 0; d < t.designable.size(); ++d) {
            if (t.designable[d].first != row) continue;
            slots.push_back(static_cast<int>(d));
            if (c.bits[d]) { satisfied = true; break; }
        }
        if (satisfied) continue;
        // slots collected so far may be partial if we broke early; recollect
        if (slots.empty())
            throw std::runtime_error("repair_row_weight: constrained row " +
                                     std::to_string(row) + " has no designable entries");
        int pick = rng ? static_cast<int>(rng->below(static_cast<uint32_t>(slots.size())))
                       : 0;
        c.bits[static_cast<size_t>(slots[static_cast<size_t>(pick)])] = 1;
    }
}

Candidate sample_family(const ProtoTemplate& t, double density, Rng& rng) {
    if (t.designable.empty())
        throw std::invalid_argument("sample_family: template has no designable entries");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("sample_family: density must be in [0, 1]");
    Candidate c;
    c.tmpl = &t;
    c.bits.resize(t.designable.size());
    for (auto& b : c.bits) b = rng.bernoulli(density) ? 1 : 0;
    repair_row_weight(c, &rng);
    return c;
}

int column_group(const ProtoTemplate& t, int col) {
    bool info = col < t.info_count;
    int blk = t.mapping(col);
    if (info) return blk == 0 ? 0 : 1;
    return blk == 1 ? 2 : 3;
}

int row_group(const ProtoTemplate& t, int row) {
    // the target of row j is column j, whose block identifies the group
    return t.mapping(row);
}

TemplateCheck validate_structure(const ProtoTemplate& t) {
    TemplateCheck chk;
    auto fail = [&](std::string s) { chk.violations.push_back(std::move(s)); };
    int q = t.cols / 4;

    if (t.cols < 8 || t.cols % 4 != 0 || t.rows != t.cols / 2 ||
        t.info_count != t.cols / 2) {
        fail("dimensions are not the rate-1/2 layout (rows = cols/2 = info)");
        return chk;
    }
    if (t.mapping.size() != t.cols || t.mapping.block_count != 2) {
        fail("block mapping must cover all columns with two blocks");
        return chk;
    }

    for (int j = 0; j < t.rows; ++j)
        if (t.status_at(j, j) != EntryStatus::Fixed1)
            fail("row " + std::to_string(j) + ": target diagonal entry is not fixed to 1");

    // rows 0 and q must be unconditional rootchecks for their targets:
    // a fixed opposite-block neighbor and nothing possibly-set in their block
    for (int j : {0, q}) {
        int target_blk = t.mapping(j);
        bool fixed_opposite = false;
        for (int i = 0; i < t.cols; ++i) {
            if (i == j) continue;
            EntryStatus s = t.status_at(j, i);
            if (s == EntryStatus::Fixed0) continue;
            if (t.mapping(i) == target_blk)
                fail("row " + std::to_string(j) + ": possibly-set same-block entry at column " +
                     std::to_string(i) + " breaks the rootcheck");
            else if (s == EntryStatus::Fixed1)
                fixed_opposite = true;
        }
        if (!fixed_opposite)
            fail("row " + std::to_string(j) + ": no fixed opposite-block neighbor (anchor missing)");
    }

    // every other row: possibly-set entries are opposite-block or same-block
    // info columns that resolve earlier (column index below the row's target)
    for (int j = 0; j < t.rows; ++j) {
        int target_blk = t.mapping(j);
        for (int i = 0; i < t.cols; ++i) {
            if (i == j) continue;
            if (t.status_at(j, i) == EntryStatus::Fixed0) continue;
            if (t.mapping(i) != target_blk) continue;
            if (i < t.info_count && i < j) continue;
            fail("row " + std::to_string(j) + ": entry at column " + std::to_string(i) +
                 " is same-block but not an earlier info column");
        }
    }

    for (int row : t.row_weight_rows) {
        if (row < 0 || row >= t.rows) {
            fail("constrained row " + std::to_string(row) + " out of range");
            continue;
        }
        bool has = false;
        for (const auto& [j, i] : t.designable)
            if (j == row) { has = true; break; }
        if (!has)
            fail("constrained row " + std::to_string(row) + " has an empty designable set");
    }
    return chk;
}

std::string format_template(const ProtoTemplate& t) {
    std::ostringstream os;
    os << t.rows << ' ' << t.cols << '\n';
    for (int j = 0; j < t.rows; ++j) {
        for (int i = 0; i < t.cols; ++i) {
            if (i) os << ' ';
            switch (t.status_at(j, i)) {
                case EntryStatus::Fixed0: os << '0'; break;
                case EntryStatus::Fixed1: os << '1'; break;
                case EntryStatus::Designable: os << '?'; break;
            }
        }
        os << '\n';
    }
    os << "PI";
    for (int m : t.mapping.assignment) os << ' ' << m;
    os << '\n';
    os << "RWROWS";
    for (int r : t.row_weight_rows) os << ' ' << r;
    os << '\n';
    return os.str();
}

ProtoTemplate parse_template(std::string_view text, const std::string& name) {
    // reuse the base-matrix tokenizer by substituting '?' on the way through
    // would lose positions; parse directly instead
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            size_t h = line.find('#');
            if (h != std::string::npos) line.resize(h);
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError(name, 1, 1, "empty template file");
    std::istringstream hs(line);
    int rows = 0, cols = 0;
    if (!(hs >> rows >> cols) || rows < 1 || cols < 1)
        throw ParseError(name, line_no, 1, "expected header 'ROWS COLS'");

    ProtoTemplate t;
    t.rows = rows;
    t.cols = cols;
    t.info_count = cols / 2;
    t.status.assign(static_cast<size_t>(rows) * cols, EntryStatus::Fixed0);

    for (int j = 0; j < rows; ++j) {
        if (!next_line())
            throw ParseError(name, line_no, 1, "missing matrix row " + std::to_string(j));
        std::istringstream rs(line);
        std::string tok;
        for (int i = 0; i < cols; ++i) {
            if (!(rs >> tok))
                throw ParseError(name, line_no, 1, "row has fewer than " +
                                                        std::to_string(cols) + " entries");
            EntryStatus s;
            if (tok == "0") s = EntryStatus::Fixed0;
            else if (tok == "1") s = EntryStatus::Fixed1;
            else if (tok == "?") s = EntryStatus::Designable;
            else
                throw ParseError(name, line_no, 1,
                                 "template entry must be 0, 1 or ?, got '" + tok + "'");
            t.status[static_cast<size_t>(j) * cols + i] = s;
            if (s == EntryStatus::Designable) t.designable.emplace_back(j, i);
        }
        if (rs >> tok)
            throw ParseError(name, line_no, 1, "row has more than " +
                                                    std::to_string(cols) + " entries");
    }

    if (!next_line()) throw ParseError(name, line_no, 1, "missing PI line");
    {
        std::istringstream ps(line);
        std::string tag;
        ps >> tag;
        if (tag != "PI") throw ParseError(name, line_no, 1, "expected PI line");
        std::vector<int> assign;
        int m = 0, maxb = 0;
        while (ps >> m) {
            if (m < 0) throw ParseError(name, line_no, 1, "negative block index");
            maxb = std::max(maxb, m);
            assign.push_back(m);
        }
        if (static_cast<int>(assign.size()) != cols)
            throw ParseError(name, line_no, 1, "PI line must list one block per column");
        t.mapping = BlockMapping(std::move(assign), maxb + 1);
    }

    if (!next_line()) throw ParseError(name, line_no, 1, "missing RWROWS line");
    {
        std::istringstream ws(line);
        std::string tag;
        ws >> tag;
        if (tag != "RWROWS") throw ParseError(name, line_no, 1, "expected RWROWS line");
        int r = 0;
        while (ws >> r) {
            if (r < 0 || r >= rows)
                throw ParseError(name, line_no, 1, "RWROWS index out of range");
            t.row_weight_rows.push_back(r);
        }
        if (t.row_weight_rows.empty())
            throw ParseError(name, line_no, 1, "RWROWS line is empty");
    }
    return t;
}

ProtoTemplate load_template(const std::string& path) {
    return parse_template(read_text_file(path), path);
}

void save_template(const ProtoTemplate& t, const std::string& path) {
    write_text_file(path, format_template(t));
}

}  // namespace ldpc
