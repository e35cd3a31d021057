# Letters of g-words
letter_multiplication = 'M'
letter_s = 'S'
letter_t = 'T'
letters = (letter_multiplication, letter_s, letter_t)

# Aperture of the Stolz regions, not configurable
stolz_aperture = 2.0

# Lower doubling scan set
lower_doubling_ks = (2, 4, 8, 16)

# Doubling grids reach 1 - r = 1e-4
doubling_grid_depth = 1e-4
doubling_grid_steps_per_decade = 8
upper_doubling_blowup = 100.

# beta exponent scan
beta_step = 0.05
beta_max = 40.
beta_shallow_depth = 1e-2

# Carleson squares: side 2^-j for j = 0..12, 2^(j+3) centers per level
carleson_levels = tuple(range(13))
carleson_extra_centers_exp = 3

# Kernel test family
kernel_radii = (0.5, 0.7, 0.9, 0.95)
kernel_angles = 8

# Garsia a-grid
garsia_radii = (0., .25, .5, .75, .9, .95)
garsia_angles = 16

# Truncation adequacy threshold
truncation_rel_change = .05

# Label carried by every sup-type result
certified_lower_bound = 'lower_bound'

# CLI exit codes
exit_ok = 0
exit_error = 1
exit_usage = 2
exit_inconclusive = 3
exit_guard = 4

# Estimate flags
flag_inconclusive = 'inconclusive'
flag_truncation_limited = 'truncation_limited'
