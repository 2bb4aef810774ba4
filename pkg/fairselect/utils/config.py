from fairselect.exceptions import ConfigError


def parse_config_lines(lines, source="<config>"):
    """
    Parses flat ``key = value`` lines into a dict.

    Blank lines and everything after a ``#`` are ignored. Keys may appear once.
    """

    values = {}
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError("%s line %d: expected 'key = value'" % (source, number))
        if key in values:
            raise ConfigError("%s line %d: duplicate key '%s'" % (source, number, key))
        values[key] = value.strip()
    return values


def read_config_file(path):
    try:
        with open(path, encoding="utf-8") as f:
            return parse_config_lines(f, source=str(path))
    except OSError as e:
        raise ConfigError("cannot read config file %s: %s" % (path, e.strerror or e))
