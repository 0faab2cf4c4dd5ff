#pragma once

#include <string>
#include <vector>

#include "hypertheta/verify.hpp"

namespace hypertheta {

enum class OutputFormat { Structured, Tabular };

// Runtime fields appear only with timings, so equal seeds give byte-identical bodies.
std::string format_report(const SuiteReport& report, OutputFormat format, bool timings);
std::string format_periods(const Curve& curve, const PeriodMatrices& pm, OutputFormat format);
std::string format_characteristics(int genus, OutputFormat format);
std::string format_tensor(const DerivativeTensor& t, const Partition& p, const Characteristic& c,
                          OutputFormat format);
std::string format_bolza(const Curve& curve, const std::vector<BolzaRow>& rows, OutputFormat format);

}  // namespace hypertheta
