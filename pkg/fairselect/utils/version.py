def get_version(version):  # pragma: no cover
    """Returns a PEP 440 version string from a VERSION tuple."""

    main = get_main_version(version)

    release = version[3]
    if release == "final":
        return main
    if release == "dev":
        return "%s.dev%s" % (main, version[4])

    mapping = {"alpha": "a", "beta": "b", "rc": "rc"}
    return main + mapping[release] + str(version[4])


def get_main_version(version):  # pragma: no cover
    """Returns main version (X.Y[.Z]) from VERSION."""

    parts = 2 if version[2] == 0 else 3
    return ".".join(str(x) for x in version[:parts])
