#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "fvsdg/types.hpp"

namespace fvsdg {

struct EigenStructure {
    Vec lambda;
    Mat R;
    Mat L;

    Mat matrix() const { return R * lambda.asDiagonal() * L; }
};

// Averaged interface state. Scalar-like fields unused by a model stay zero.
struct RoeState {
    double rho = 0.0;  // rho or h
    double u = 0.0;
    double v = 0.0;
    double H = 0.0;  // total enthalpy (Euler only)
    double a = 0.0;
    double P = 0.0;
    double E = 0.0;

    Vec conservative;  // averaged state as conserved variables
};

// Physical state for the Mach-number splittings: density-like rho,
// velocity (u, v), pressure P, sound speed a, specific total enthalpy H.
struct GasState {
    double rho, u, v, P, a, H;
};

class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual int m() const = 0;
    virtual int dim() const = 0;
    bool scalar() const { return m() == 1; }

    // flux in direction dir (0: x, 1: y)
    virtual Vec flux(const Vec& U, int dir, const Point& p, double t) const = 0;
    Vec normal_flux(const Vec& U, Normal n, const Point& p, double t) const;

    // spectral radius of the directional flux Jacobian
    virtual double max_speed(const Vec& U, int dir, const Point& p, double t) const = 0;

    virtual bool admissible(const Vec&) const { return true; }
    // a priori bound on wave speeds used by the CFL step instead of cell means (0: none)
    virtual double speed_bound() const { return 0.0; }
    virtual Vec reflect(const Vec& U, Normal n) const;

    virtual bool has_source() const { return false; }
    virtual Vec source(const Vec& U, const Point& p, double t) const;

    // transport velocity normal to a face, used for the inflow test of KXRCF
    virtual double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const = 0;

    // systems with an analytic eigenstructure (for SWE the modified A*)
    virtual bool has_eigen() const { return false; }
    virtual EigenStructure eigen(const Vec& U, Normal n) const;
    virtual RoeState roe_average(const Vec& UL, const Vec& UR, Normal n) const;
    // eigenvectors of the normal flux Jacobian, used for characteristic limiting
    virtual EigenStructure char_eigen(const Vec& U, Normal n) const { return eigen(U, n); }

    // Mach-number splittings
    virtual bool has_gas_form() const { return false; }
    virtual double gamma() const { return 0.0; }
    virtual GasState gas(const Vec& U) const;

    // scalar equations: F_n'(u) and the constant K with a = K F_n'(u)
    virtual double dflux(double u, Normal n, const Point& p, double t) const;
    virtual double sw_factor() const { return 1.0; }
    // max |F_n'| over the interval spanned by uL, uR
    virtual double max_dflux(double uL, double uR, Normal n, const Point& p, double t) const;
};

class Euler final : public Model {
public:
    explicit Euler(int dim, double gamma = 1.4) : dim_(dim), gamma_(gamma) {}

    std::string name() const override { return dim_ == 1 ? "euler1d" : "euler2d"; }
    int m() const override { return dim_ + 2; }
    int dim() const override { return dim_; }
    Vec flux(const Vec& U, int dir, const Point& p, double t) const override;
    double max_speed(const Vec& U, int dir, const Point& p, double t) const override;
    bool admissible(const Vec& U) const override;
    Vec reflect(const Vec& U, Normal n) const override;
    double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const override;
    bool has_eigen() const override { return true; }
    EigenStructure eigen(const Vec& U, Normal n) const override;
    RoeState roe_average(const Vec& UL, const Vec& UR, Normal n) const override;
    bool has_gas_form() const override { return true; }
    double gamma() const override { return gamma_; }
    GasState gas(const Vec& U) const override;

    double pressure(const Vec& U) const;
    Vec conservative(double rho, double u, double v, double P) const;
    // (rho, u, [v,] P)
    Vec primitive(const Vec& U) const;
    EigenStructure eigen_from(double rho, double u, double v, double H, double a, Normal n) const;

private:
    int dim_;
    double gamma_;
};

class ShallowWater final : public Model {
public:
    // bottom slope dz/dx for the source -g h z_x (1D only); null means flat
    explicit ShallowWater(int dim, double g = 9.8120, std::function<double(double)> bottom_slope = {})
        : dim_(dim), g_(g), slope_(std::move(bottom_slope)) {}

    std::string name() const override { return dim_ == 1 ? "swe1d" : "swe2d"; }
    int m() const override { return dim_ + 1; }
    int dim() const override { return dim_; }
    Vec flux(const Vec& U, int dir, const Point& p, double t) const override;
    double max_speed(const Vec& U, int dir, const Point& p, double t) const override;
    bool admissible(const Vec& U) const override;
    Vec reflect(const Vec& U, Normal n) const override;
    bool has_source() const override { return static_cast<bool>(slope_); }
    Vec source(const Vec& U, const Point& p, double t) const override;
    double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const override;
    bool has_eigen() const override { return true; }
    EigenStructure eigen(const Vec& U, Normal n) const override;
    EigenStructure char_eigen(const Vec& U, Normal n) const override;
    RoeState roe_average(const Vec& UL, const Vec& UR, Normal n) const override;
    bool has_gas_form() const override { return true; }
    double gamma() const override { return 2.0; }
    GasState gas(const Vec& U) const override;

    double g() const { return g_; }
    // wave speed as: sqrt(g h / 2) for the modified splitting, sqrt(g h) for the Jacobian
    EigenStructure eigen_from(double u, double v, Normal n, double as) const;

private:
    int dim_;
    double g_;
    std::function<double(double)> slope_;
};

// u_t + (alpha u)_x + (beta u)_y = 0 with a prescribed velocity field.
class LinearAdvection final : public Model {
public:
    using Velocity = std::function<std::array<double, 2>(const Point&, double)>;
    LinearAdvection(int dim, Velocity vel, double bound = 0.0, std::string name = "advection")
        : dim_(dim), vel_(std::move(vel)), bound_(bound), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    int m() const override { return 1; }
    int dim() const override { return dim_; }
    Vec flux(const Vec& U, int dir, const Point& p, double t) const override;
    double max_speed(const Vec& U, int dir, const Point& p, double t) const override;
    double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const override;
    double dflux(double u, Normal n, const Point& p, double t) const override;
    double max_dflux(double uL, double uR, Normal n, const Point& p, double t) const override;

    double speed_bound() const override { return bound_; }
    std::array<double, 2> velocity(const Point& p, double t) const { return vel_(p, t); }

private:
    int dim_;
    Velocity vel_;
    double bound_;
    std::string name_;
};

// u_t + (u^2/2)_x [+ (u^2/2)_y] = 0
class Burgers final : public Model {
public:
    explicit Burgers(int dim) : dim_(dim) {}

    std::string name() const override { return dim_ == 1 ? "burgers1d" : "burgers2d"; }
    int m() const override { return 1; }
    int dim() const override { return dim_; }
    Vec flux(const Vec& U, int dir, const Point& p, double t) const override;
    double max_speed(const Vec& U, int dir, const Point& p, double t) const override;
    double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const override;
    double dflux(double u, Normal n, const Point& p, double t) const override;
    double sw_factor() const override { return 0.5; }
    double max_dflux(double uL, double uR, Normal n, const Point& p, double t) const override;

private:
    int dim_;
};

// f(u) = 4u^2 / (4u^2 + (1-u)^2)
class BuckleyLeverett final : public Model {
public:
    std::string name() const override { return "buckley-leverett"; }
    int m() const override { return 1; }
    int dim() const override { return 1; }
    Vec flux(const Vec& U, int dir, const Point& p, double t) const override;
    double max_speed(const Vec& U, int dir, const Point& p, double t) const override;
    double normal_velocity(const Vec& U, Normal n, const Point& p, double t) const override;
    double dflux(double u, Normal n, const Point& p, double t) const override;
    double max_dflux(double uL, double uR, Normal n, const Point& p, double t) const override;

    static double f(double u);
    static double df(double u);
};

}  // namespace fvsdg
