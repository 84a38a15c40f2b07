#ifndef BNLS_IO_HPP
#define BNLS_IO_HPP

// Artifact writers: a small ordered JSON emitter with every scalar at 17
// significant digits, and CSV tables with one header row preceded by
// '#'-prefixed provenance lines carrying the resolved configuration.

#include <string>
#include <vector>

namespace bnls {

std::string format_g17(double v);

class JsonWriter {
  public:
    JsonWriter& put(const std::string& key, double v);
    JsonWriter& put(const std::string& key, int v);
    JsonWriter& put(const std::string& key, std::uint64_t v);
    JsonWriter& put(const std::string& key, bool v);
    JsonWriter& put(const std::string& key, const std::string& v);
    JsonWriter& put(const std::string& key, const char* v);
    JsonWriter& put_array(const std::string& key, const std::vector<double>& v);
    JsonWriter& put_array(const std::string& key, const std::vector<std::string>& v);
    JsonWriter& put_object(const std::string& key, const JsonWriter& obj);
    std::string str() const;

  private:
    std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_escape(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& provenance_lines);

}  // namespace bnls

#endif
