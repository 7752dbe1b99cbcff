#include "edgetrust/store.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "edgetrust/errors.hpp"

namespace edgetrust {

namespace {

void check_text_field(const ByteString& value, const char* what) {
  for (std::uint8_t byte : value) {
    if (byte == '\t' || byte == '\n' || byte == '\r') {
      throw Error(ErrorCode::integrity_error,
                  std::string(what) + " contains a tab or newline and cannot be stored");
    }
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

HashDigest digest_field(std::string_view field, int line_no, const char* what) {
  try {
    return digest_from_hex(field);
  } catch (const Error&) {
    parse_fail(line_no, std::string("bad ") + what + " digest");
  }
}

ByteString hex_field(std::string_view field, int line_no, const char* what) {
  try {
    return from_hex(field);
  } catch (const Error&) {
    parse_fail(line_no, std::string("bad ") + what + " hex value");
  }
}

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  }
  return out;
}

template <typename LoadFn>
auto load_path(const std::filesystem::path& path, LoadFn load)
    -> decltype(load(std::declval<std::istream&>())) {
  if (!std::filesystem::exists(path)) {
    return {};
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  return load(in);
}

}  // namespace

void save_trust_center_table(const TrustCenterTable& table, std::ostream& out) {
  for (const auto& [uid, record] : table.rows()) {
    check_text_field(uid, "uid");
    out << string_of(uid) << '\t' << to_hex(record.c) << '\t' << to_hex(record.d) << '\t'
        << to_hex(record.b) << '\n';
  }
}

void save_trust_center_table(const TrustCenterTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path, std::ios::trunc);
  save_trust_center_table(table, out);
}

TrustCenterTable load_trust_center_table(std::istream& in) {
  TrustCenterTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 4) {
      parse_fail(line_no, "expected 4 tab-separated fields, found " +
                              std::to_string(fields.size()));
    }
    TrustCenterRecord record;
    record.uid = bytes_of(fields[0]);
    if (record.uid.empty()) {
      parse_fail(line_no, "empty uid");
    }
    record.c = digest_field(fields[1], line_no, "C");
    record.d = digest_field(fields[2], line_no, "D");
    record.b = hex_field(fields[3], line_no, "b");
    if (table.contains(record.uid)) {
      throw Error(ErrorCode::integrity_error,
                  "line " + std::to_string(line_no) + ": duplicate uid '" + std::string(fields[0]) + "'");
    }
    table.insert(std::move(record));
  }
  return table;
}

TrustCenterTable load_trust_center_table(const std::filesystem::path& path) {
  return load_path(path, [](std::istream& in) { return load_trust_center_table(in); });
}

void save_device_table(const DeviceTable& table, std::ostream& out) {
  for (const auto& [uid, record] : table.rows()) {
    check_text_field(uid, "uid");
    check_text_field(record.password, "password");
    out << string_of(uid) << '\t' << string_of(record.password) << '\t' << to_hex(record.d)
        << '\t' << to_hex(record.b) << '\n';
  }
}

void save_device_table(const DeviceTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path, std::ios::trunc);
  save_device_table(table, out);
}

DeviceTable load_device_table(std::istream& in) {
  DeviceTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 4) {
      parse_fail(line_no, "expected 4 tab-separated fields, found " +
                              std::to_string(fields.size()));
    }
    DeviceRecord record;
    record.uid = bytes_of(fields[0]);
    if (record.uid.empty()) {
      parse_fail(line_no, "empty uid");
    }
    record.password = bytes_of(fields[1]);
    record.d = digest_field(fields[2], line_no, "D");
    record.b = hex_field(fields[3], line_no, "b");
    if (table.contains(record.uid)) {
      throw Error(ErrorCode::integrity_error,
                  "line " + std::to_string(line_no) + ": duplicate uid '" + std::string(fields[0]) + "'");
    }
    table.insert(std::move(record));
  }
  return table;
}

DeviceTable load_device_table(const std::filesystem::path& path) {
  return load_path(path, [](std::istream& in) { return load_device_table(in); });
}

ActivityLog& ActivityStore::log_for(const ByteString& uid) {
  auto it = logs_.find(uid);
  if (it == logs_.end()) {
    it = logs_.emplace(uid, ActivityLog(uid)).first;
  }
  return it->second;
}

const ActivityLog* ActivityStore::find(const ByteString& uid) const {
  auto it = logs_.find(uid);
  return it == logs_.end() ? nullptr : &it->second;
}

void ActivityStore::append(ActivityRecord record) {
  log_for(record.uid).append(std::move(record));
}

std::string format_activity_row(const ActivityRecord& record) {
  check_text_field(record.uid, "uid");
  check_text_field(record.sid, "sid");
  std::ostringstream out;
  out << string_of(record.uid) << '\t' << string_of(record.sid) << '\t'
      << (record.kind == ActionKind::positive ? "PA" : "NA") << '\t' << record.action_time;
  return out.str();
}

namespace {

ActivityRecord parse_activity_row(std::string_view line, int line_no) {
  auto fields = split_fields(line);
  if (fields.size() != 4) {
    parse_fail(line_no,
               "expected 4 tab-separated fields, found " + std::to_string(fields.size()));
  }
  ActivityRecord record;
  record.uid = bytes_of(fields[0]);
  if (record.uid.empty()) {
    parse_fail(line_no, "empty uid");
  }
  record.sid = bytes_of(fields[1]);
  if (fields[2] == "PA") {
    record.kind = ActionKind::positive;
  } else if (fields[2] == "NA") {
    record.kind = ActionKind::negative;
  } else {
    parse_fail(line_no, "action kind must be PA or NA");
  }
  auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(),
                                   record.action_time);
  if (ec != std::errc{} || ptr != fields[3].data() + fields[3].size()) {
    parse_fail(line_no, "bad action time");
  }
  return record;
}

}  // namespace

ActivityRecord parse_activity_row(std::string_view line) {
  return parse_activity_row(line, 1);
}

void append_activity_row(const std::filesystem::path& path, const ActivityRecord& record) {
  auto out = open_for_write(path, std::ios::app);
  out << format_activity_row(record) << '\n';
  if (!out.good()) {
    throw Error(ErrorCode::io_error, "append to " + path.string() + " failed");
  }
}

ActivityStore load_activity_store(std::istream& in) {
  ActivityStore store;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    store.append(parse_activity_row(line, line_no));
  }
  return store;
}

ActivityStore load_activity_store(const std::filesystem::path& path) {
  return load_path(path, [](std::istream& in) { return load_activity_store(in); });
}

void save_secret(const TrustCenterSecret& secret, const std::filesystem::path& path) {
  auto out = open_for_write(path, std::ios::trunc);
  out << to_hex(secret.x) << '\n';
}

std::optional<TrustCenterSecret> load_secret(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    return std::nullopt;
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::parse_error, "secret file is empty");
  }
  TrustCenterSecret secret;
  try {
    secret.x = digest_from_hex(line);
  } catch (const Error&) {
    throw Error(ErrorCode::parse_error, "secret file is not a 32-octet hex digest");
  }
  return secret;
}

}  // namespace edgetrust
