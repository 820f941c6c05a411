#include "rsn/kernels.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rsn/errors.hpp"

namespace rsn {
namespace {

void check_request(const ScaledRequest& r) {
  if (r.u.empty()) throw std::invalid_argument("simulate: empty u-grid");
  if (!(r.t > 0.0)) throw std::invalid_argument("simulate: t must be positive");
  validate(r.spec);
  const double shots = expected_total_shots(r);
  if (shots > r.max_shots) {
    std::ostringstream msg;
    msg << "about " << shots << " shot evaluations needed at t=" << r.t
        << ", above the cap of " << r.max_shots;
    throw ResourceCapError(msg.str());
  }
}

double horizon(const ScaledRequest& r) {
  return r.t * *std::max_element(r.u.begin(), r.u.end());
}

void fill_row(const ScaledRequest& r, Stream& stream, std::span<double> out) {
  const RenewalPath path = sample_path(r.spec.law, horizon(r), r.delay, stream);
  const std::vector<double> s = scaled_statistic(r.spec, path, r.u, r.t);
  std::copy(s.begin(), s.end(), out.begin());
}

}  // namespace

std::vector<double> SampleMatrix::column(std::size_t j) const {
  std::vector<double> c(replicates);
  for (std::size_t i = 0; i < replicates; ++i) c[i] = at(i, j);
  return c;
}

double expected_total_shots(const ScaledRequest& request) {
  return expected_shots(request.spec.law, horizon(request)) *
         static_cast<double>(request.replicates);
}

SampleMatrix simulate_scaled(const ScaledRequest& request, Execution exec) {
  check_request(request);
  return generate_rows(request.u, request.t, request.replicates, request.seed, request.tag,
                       exec, [&](Stream& stream, std::span<double> out) {
                         fill_row(request, stream, out);
                       });
}

SampleMatrix simulate_scaled_serial(const ScaledRequest& request) {
  check_request(request);
  SampleMatrix m;
  m.u = request.u;
  m.t = request.t;
  m.replicates = request.replicates;
  for (std::size_t i = 0; i < request.replicates; ++i) {
    Stream stream(request.seed, StreamId{request.tag, i});
    const RenewalPath path = sample_path(request.spec.law, horizon(request), request.delay, stream);
    for (double v : scaled_statistic(request.spec, path, request.u, request.t)) {
      m.values.push_back(v);
    }
  }
  return m;
}

}  // namespace rsn
