"""Does shaping help an adaptive compressor?  Measure, don't argue.

Compresses seeded uniform strings before and after shaping with the same
add-half adaptive arithmetic coder.  Shaped blocks carry k extra symbols,
so the honest comparison is total compressed bits per source block; the
average content drop must outrun the per-block length tax to win.
"""

from setshaping import ShapingParameters, shaping_experiment

print(
    f"{'a':>3} {'n':>4} {'k':>2} {'raw bits':>9} {'shaped':>9} "
    f"{'delta':>8} {'raw info':>9} {'shaped info':>11}"
)
for a, n, k in [(2, 10, 1), (3, 10, 1), (3, 50, 1), (5, 30, 1), (5, 30, 2)]:
    report = shaping_experiment(ShapingParameters(a, n, k), samples=4000, seed=0)
    print(
        f"{a:>3} {n:>4} {k:>2} {report.mean_bits_raw:9.3f} "
        f"{report.mean_bits_shaped:9.3f} {report.delta_bits:+8.3f} "
        f"{report.mean_emp_info_raw:9.3f} {report.mean_emp_info_shaped:11.3f}"
    )

print("\npositive delta means shaped blocks compressed smaller in total.")
print("the info columns drop whenever the alphabet leaves the tail room;")
print("two-symbol rows are the known exception, since admitting half of")
print("all longer strings drags high-content classes into the image.  the")
print("bits columns additionally pay the coder's overhead on k extra")
print("symbols, which can eat the gain at small n.")
