//! Bundled experiment presets, one per headline result family, at
//! desk-scale trial counts. Each preset is an ordinary spec file embedded
//! as text; `--trials`, `--seed`, `--engine` and `--set` overrides apply.

pub const PRESETS: &[(&str, &str)] = &[
    (
        "fig2_outage_vs_NJ",
        r#"
[experiment]
name = fig2_outage_vs_NJ
metric = outage
engines = both
trials = 20000
seed = 42
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 16
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sweep]
param = n_j
grid = 1,2,4,8,16,32
"#,
    ),
    (
        "fig3_outage_vs_NJc",
        r#"
[experiment]
name = fig3_outage_vs_NJc
metric = outage
engines = both
trials = 20000
seed = 43
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sweep]
param = n_jc
grid = 0.25,0.5,1,2,4
"#,
    ),
    (
        "fig4_outage_vs_p",
        r#"
[experiment]
name = fig4_outage_vs_p
metric = outage
engines = both
trials = 20000
seed = 44
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sweep]
param = p
grid = 0.01,0.1,1.0
"#,
    ),
    (
        "ghq_outage_accuracy",
        r#"
# Gauss-Hermite order sweep against the exact shadowing integral
# (grid value 0 selects the exact quadrature path)

[experiment]
name = ghq_outage_accuracy
metric = outage
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 16
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sweep]
param = ghq_n
grid = 0,5,10,15,20
"#,
    ),
    (
        "fig5_njstar_vs_p",
        r#"
# Jammers needed for 90% outage as the network load varies; the
# deployment disk is pinned at 10 / sqrt(lambda_eff).

[experiment]
name = fig5_njstar_vs_p
metric = njstar
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 1
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sizing]
target_outage = 0.9
policy = fixed
fixed_r_over_sqrt_lambda = 10.0
n_max = 20000

[sweep]
param = p
grid = 0.01,0.1,1.0
"#,
    ),
    (
        "fig6_njstar_vs_lambda",
        r#"
# Jammers needed for 90% outage across base-station densities at a fixed
# deployment radius: rises while the network is signal-limited, then
# collapses once the bounded path loss makes the network interference-
# limited on its own. The radius is 0.5 / sqrt(lambda_eff at factor 1).

[experiment]
name = fig6_njstar_vs_lambda
metric = njstar
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.1
snr_db = 0.0

[jammers]
n_j = 1
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sizing]
target_outage = 0.9
policy = fixed
fixed_r_abs = 202.39
n_max = 60000

[sweep]
param = lambda_factor
grid = 1e4,1e5,3e5,1e6,3e6
"#,
    ),
    (
        "fig7_njstar_vs_sigma",
        r#"
# Jammers needed for 90% outage as shadowing deepens; the effective
# density is re-derived from the raw one at every grid point.

[experiment]
name = fig7_njstar_vs_sigma
metric = njstar
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 1
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[sizing]
target_outage = 0.9
policy = fixed
fixed_r_over_sqrt_lambda = 10.0
n_max = 40000

[sweep]
param = sigma_chi_db
grid = 0,3,6,9
"#,
    ),
    (
        "retx_activity_vs_D",
        r#"
# Steady-state activity inflation under retransmissions, one jammer per
# cell (a single jammer whose disk covers one cell).

[experiment]
name = retx_activity_vs_D
metric = retx
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 1
n_jc = 1.0
jnr_db = 0.0
scheme = bpsk

[retx]
coupling = fixed_point
output = activity

[sweep]
param = d
grid = 0,1,2,3,4,5,6,7,8
"#,
    ),
    (
        "retx_drop_vs_D",
        r#"
# Packet-drop probability under retransmissions with four jammers per cell.

[experiment]
name = retx_drop_vs_D
metric = retx
engines = analytic
theta_db = 0.0
ghq_n = 15

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 0.0

[jammers]
n_j = 4
n_jc = 4.0
jnr_db = 0.0
scheme = bpsk

[retx]
coupling = fixed_point
output = drop

[sweep]
param = d
grid = 0,1,2,3,4,5,6,7,8
"#,
    ),
    (
        "fig8_asep_vs_p",
        r#"
[experiment]
name = fig8_asep_vs_p
metric = ser
engines = both
trials = 200000
seed = 48
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = p
grid = 0.01,0.1,1.0
"#,
    ),
    (
        "fig9_asep_vs_NJ",
        r#"
[experiment]
name = fig9_asep_vs_NJ
metric = ser
engines = both
trials = 200000
seed = 49
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = n_j
grid = 1,4,16
"#,
    ),
    (
        "fig10_asep_vs_NJc",
        r#"
[experiment]
name = fig10_asep_vs_NJc
metric = ser
engines = both
trials = 200000
seed = 50
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = n_jc
grid = 1,2,4
"#,
    ),
    (
        "asep_vs_sigma",
        r#"
[experiment]
name = asep_vs_sigma
metric = ser
engines = both
trials = 200000
seed = 51
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = sigma_chi_db
grid = 0,3,6,9
"#,
    ),
    (
        "fig11_ser_jamming_schemes",
        r#"
# Jamming-scheme comparison under Rayleigh fading: constant-modulus
# schemes coincide; Gaussian-amplitude jamming sits a few percent lower.

[experiment]
name = fig11_ser_jamming_schemes
metric = ser
engines = both
trials = 200000
seed = 52
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = scheme
grid = bpsk,qpsk,awgn
"#,
    ),
    (
        "fig12_ser_nofading",
        r#"
# Line-of-sight victim: with fading removed the jamming alphabet matters
# and modulated jamming beats Gaussian jamming.

[experiment]
name = fig12_ser_nofading
metric = ser
engines = mc
trials = 200000
seed = 53
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 180.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 195.0
scheme = bpsk

[victim]
constellation = bpsk
fading = none

[sweep]
param = scheme
grid = bpsk,qpsk,awgn
"#,
    ),
    (
        "gauss_approx_baseline",
        r#"
# Gaussian approximation of the jammer aggregate against the exact
# treatment: analytic column uses the Gaussian-variance characteristic
# function, mc column is the true-field simulator.

[experiment]
name = gauss_approx_baseline
metric = ser
engines = both
trials = 200000
seed = 54
ghq_n = 10

[network]
lambda_raw = 4.6188021535170065e-6
alpha = 3.7
sigma_chi_db = 6.0
p = 0.01
snr_db = 100.0

[jammers]
n_j = 4
n_jc = 1.0
jnr_db = 100.0
scheme = bpsk
model = gaussian

[victim]
constellation = bpsk
fading = rayleigh

[sweep]
param = jnr_db
grid = 90,100,110
"#,
    ),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|&(_, text)| text)
}

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|&(n, _)| n).collect()
}
