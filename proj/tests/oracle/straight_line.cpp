#include "straight_line.hpp"

#include <cmath>

namespace oracle {

DayTotals simulate(const Net& net, const std::vector<Hour>& day, const Start& start, bool summer) {
  const double A[2] = {0.088094, -0.027957};
  const double B[2] = {0.42435, 0.80107};
  const double C[2] = {0.19291, 0.34667};
  const double AQ[2] = {1.1766, 1.3293};
  const double BQ[2] = {65.881, 77.25};

  double prev_p[2] = {start.p[0], start.p[1]};
  bool prev_on[2] = {start.on[0], start.on[1]};
  double cost = 0, lb = 0, waste = 0;
  int reliable = 0;

  for (const Hour& h : day) {
    double raw[6] = {h.temperature, h.wind, h.solar_wm2, h.streamflow, h.prior_price, double(h.hour)};
    double x[6];
    for (int i = 0; i < 6; i++) x[i] = (raw[i] - net.offset[i]) / net.scale[i];

    double hid[64];
    for (int j = 0; j < net.hidden; j++) {
      double z = net.w[net.hidden * 6 + j];
      for (int i = 0; i < 6; i++) z += net.w[j * 6 + i] * x[i];
      hid[j] = 1 / (1 + std::exp(-z));
    }
    const int o2 = net.hidden * 7;
    double u[8];
    for (int k = 0; k < net.outputs; k++) {
      double z = net.w[o2 + net.outputs * net.hidden + k];
      for (int j = 0; j < net.hidden; j++) z += net.w[o2 + k * net.hidden + j] * hid[j];
      u[k] = 1 / (1 + std::exp(-z));
    }

    bool on[2] = {true, true};
    bool boiler_on = true;
    if (summer) {
      on[1] = u[5] >= 0.5;
      boiler_on = u[6] >= 0.5;
    }

    double p[2], q[2];
    for (int i = 0; i < 2; i++) {
      if (!on[i]) {
        p[i] = 0;
        q[i] = 0;
        continue;
      }
      double lo, hi;
      if (prev_on[i]) {
        lo = prev_p[i] - 5000 > 12000 ? prev_p[i] - 5000 : 12000;
        hi = prev_p[i] + 5000 < 16000 ? prev_p[i] + 5000 : 16000;
      } else {
        lo = 12000;
        hi = 12000 + 5000 < 16000 ? 17000 : 16000;
      }
      p[i] = lo + u[i] * (hi - lo);
      if (p[i] > hi) p[i] = hi;
      q[i] = 0 + u[2 + i] * 153;
      if (q[i] > 153) q[i] = 153;
    }
    double qb = 0;
    if (boiler_on) {
      qb = u[4] * 540;
      if (qb > 540) qb = 540;
    }

    double gas = 0;
    for (int i = 0; i < 2; i++) {
      if (p[i] > 0) {
        double r = p[i] / 16000;
        double eta = A[i] + B[i] * r + C[i] * r * r;
        gas += p[i] / (293 * eta);
      }
      double extra = AQ[i] * q[i] - BQ[i];
      if (extra > 0) gas += extra;
    }
    if (boiler_on) gas += 0.0009 * qb * qb + 1.0968 * qb + 3.7742;

    double steam = q[0] + q[1] + qb;
    double st = steam > 215 ? -1.9341 * steam + 6042.6 : 33.907 * steam + 1552.2;
    double pe = h.load_kw - p[0] - p[1] - st - h.hydro_kw - h.solar_kw;

    cost += gas * h.gas_price + pe * h.rt_price;
    lb += gas * 116.65 + (pe > 0 ? 0.932 * pe : 0);
    if (h.heat_klbh == 0) {
      if (steam > 0) waste += 1;
      reliable += 1;
    } else {
      if (steam / h.heat_klbh > 1.05) waste += 1;
      if (steam / h.heat_klbh >= 0.95) reliable += 1;
    }

    for (int i = 0; i < 2; i++) {
      prev_p[i] = p[i];
      prev_on[i] = on[i];
    }
  }

  DayTotals t;
  t.cost = cost;
  t.emission_t = lb / 2204.62;
  t.waste = waste;
  double frac = reliable / 24.0;
  t.violation = 22.0 / 24.0 - frac > 0 ? 22.0 / 24.0 - frac : 0;
  return t;
}

}  // namespace oracle
