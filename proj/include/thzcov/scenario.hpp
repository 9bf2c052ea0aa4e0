#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thzcov {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MftrParams {
    double K = 5.0;     // dominant-to-diffuse power ratio
    double m = 2.0;     // fluctuation severity
    double delta = 0.3; // dominant-wave similarity
    int mu = 2;         // cluster count
};

enum class WallLengthMode { Fixed, Exponential };

// Full scenario: every physical/system parameter in declared units.
// Defaults are the reference indoor deployment at 0.3 THz.
struct Scenario {
    double f = 3.0e11;             // carrier frequency, Hz
    double eps_f = 0.00143;        // molecular absorption coefficient, 1/m
    double h_A = 3.0;              // AP (ceiling) height, m
    double h_U = 1.0;              // UE height, m
    double h_B = 1.7;              // human blocker height, m
    double R_B = 0.25;             // human blocker radius, m
    double lambda_A = 0.1;         // AP density, 1/m^2
    double lambda_B = 0.1;         // human density, 1/m^2
    double lambda_W = 0.04;        // wall-center density, 1/m^2
    double mean_L_W = 3.0;         // mean wall length, m
    double P_t_dBm = 5.0;          // transmit power, dBm
    double N0_dBm = -77.0;         // noise power, dBm
    int N_A = 16;                  // AP array elements per side
    int N_U = 4;                   // UE array elements per side
    double R_A = 15.0;             // AP coverage radius, m
    double sigma_theta_deg = 1.5;  // angle-estimation error std, degrees
    MftrParams mftr;
    std::uint64_t seed = 1;
    double sim_radius = 0.0;       // simulation region radius, m; 0 = auto
    long n_trials = 100000;
    WallLengthMode wall_length_mode = WallLengthMode::Fixed;

    // throws ScenarioError naming the violated key/constraint
    void validate() const;
};

// Flat key=value text document; '#' starts a comment. Unknown keys are
// rejected; omitted keys keep their defaults.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);
void apply_override(Scenario& s, std::string_view key, std::string_view value);
std::string serialize(const Scenario& s);

// Constants derived once from a Scenario; immutable afterwards.
struct DerivedConstants {
    double alpha;        // human blockage rate, 1/m
    double eta;          // wall blockage rate, 1/m
    double xi;           // free-space factor c^2/(4 pi f)^2
    double sigma2_half;  // 2*sigma^2 = 1/(mu (K+1)), diffuse power
    double G_A_max;      // pi N_A^2
    double G_U_max;      // pi N_U^2
    double G_max;        // G_A_max * G_U_max
    double phi_A;        // AP half-power beamwidth 2*0.886/N_A, rad (V and H)
    double phi_U;        // UE half-power beamwidth 2*0.886/N_U, rad
    double phi_AP;       // depression angle to the coverage boundary, rad
    double beta;         // pointing-error exponent; +inf when sigma_theta = 0
    double sigma_theta;  // rad
    double P_t_lin;      // mW
    double N0_lin;       // mW
    double dz;           // h_A - h_U
    double blockage_rate() const { return alpha + eta; }
    bool no_pointing_error() const { return sigma_theta == 0.0; }
};

DerivedConstants derive_constants(const Scenario& s);

// Region radius used by the Monte Carlo engine; the LoS-AP intensity mass
// beyond it is below 1e-3 of the total at the default parameters.
double effective_sim_radius(const Scenario& s, const DerivedConstants& c);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

} // namespace thzcov
