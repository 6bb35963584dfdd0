"""Simple demonstration"""
import numpy as np


def run_demo():
    print("EDMD SPECTRA OF ANALYTIC MAPS - DEMO")
    print("=" * 60)

    # Doubling map: every matrix is known in closed form
    print("\n1. TESTING BERNOULLI EXACTNESS...")
    from src.experiments import run_bernoulli_check

    report = run_bernoulli_check(5, 100)
    print(f"[PASS] Max deviation from closed forms: {report.summary['max_deviation']:.2e}")
    print(f"[PASS] Nonzero eigenvalues: {report.summary['nonzero_eigenvalues']}")

    # Oracle for mu = rho = 0.33 exp(i pi/25)
    print("\n2. TESTING FIXED-POINT ORACLE...")
    from src.dynamics import BlaschkeParams
    from src.oracle import blaschke_exact_spectrum, blaschke_fixed_point

    params = BlaschkeParams(0.33 * np.exp(1j * np.pi / 25), 0.33 * np.exp(1j * np.pi / 25))
    fixed_point = blaschke_fixed_point(params)
    print(f"[PASS] z* = {fixed_point.z_star:.6f}, multiplier = {fixed_point.multiplier:.6f}")
    print(f"[PASS] Solvers agree within {fixed_point.agreement:.1e}")
    oracle = blaschke_exact_spectrum(params, 5)
    print(f"[PASS] Leading exact eigenvalues: {np.round(oracle.eigenvalues, 4).tolist()}")

    # EDMD on 100 grid nodes, N = 21
    print("\n3. TESTING SPECTRUM EXPERIMENT...")
    from src.experiments import run_spectrum_experiment
    from src.utils.config import build_experiment_config

    report = run_spectrum_experiment(build_experiment_config("spectrum"))
    print(f"[PASS] Leading eigenvalue error: {report.summary['leading_error']:.2e}")
    print(f"[PASS] Pair errors: {['%.1e' % e for e in report.summary['pair_errors'][:3]]}")
    print(f"[PASS] Stable eigenvalues: {report.summary['stable_count']} of {report.spectrum.size}")

    # Error against N
    print("\n4. TESTING CONVERGENCE SWEEP...")
    from src.experiments import run_convergence_sweep

    sweep = run_convergence_sweep(build_experiment_config("converge"), [11, 21, 31])
    for fit in sweep.fits:
        slope = f"{fit.slope:.3f}" if fit.applicable else "n/a"
        print(f"[PASS] Pair {fit.pair}: log10 error slope {slope}")

    print("\n" + "=" * 60)
    print("DEMO COMPLETE - ALL EXPERIMENTS OPERATIONAL")
    print("=" * 60)


if __name__ == "__main__":
    run_demo()
