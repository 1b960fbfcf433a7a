from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,  # exact-arithmetic cases vary widely in per-example cost
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
