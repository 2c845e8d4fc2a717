import yaml

# These configs are populated by default
default_config = {
    "tol": 1e-10,
    "max_terms": 200,
    "format": "json",
    "quad_tol": 1e-10,
    "quad_max_depth": 50,
    "audit_tol": 1e-8,
    "grid_points": 40,
    "figure_n": 100,
}

numeric_fields = {
    "tol": float,
    "max_terms": int,
    "quad_tol": float,
    "quad_max_depth": int,
    "audit_tol": float,
    "grid_points": int,
    "figure_n": int,
}

# These fields are required to be non-null
required_fields = ["tol", "max_terms", "format"]


def load_config(filepath=None):
    config = dict(default_config)
    if filepath is None:
        return config

    with open(filepath, "r") as config_yaml:
        loaded_config = yaml.safe_load(config_yaml)
        if loaded_config is not None:
            for key in loaded_config:
                if key not in default_config:
                    raise KeyError("Unknown config field: {}".format(key))
            config.update(loaded_config)

    for field in required_fields:
        if config.get(field) is None:
            raise KeyError("Missing required config field: {}".format(field))

    for field, parser in numeric_fields.items():
        try:
            config[field] = parser(config[field])
        except (TypeError, ValueError) as ex:
            raise ValueError("Bad value for config field {}: {}".format(field, ex))

    if config["format"] not in ("json", "csv"):
        raise ValueError("Bad value for config field format: {}".format(config["format"]))

    return config
