from oslo_config import cfg

GROUP = "rouge"

opts = [
    cfg.ListOpt(
        "n_values",
        item_type=cfg.types.Integer(min=1),
        default=[1, 2, 3],
        help="N-gram orders to report.",
    ),
    cfg.StrOpt(
        "agg",
        default="mean",
        choices=[
            ("mean", "average the scores against each reference"),
            ("max", "keep the best score over the references"),
        ],
        help="How scores against several references are combined.",
    ),
    cfg.IntOpt(
        "workers",
        default=1,
        min=1,
        help="Number of threads scoring documents.",
    ),
]
