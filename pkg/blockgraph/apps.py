from django.apps import AppConfig


class BlockGraphConfig(AppConfig):
    name = "blockgraph"
    verbose_name = "Block graph vertex deletion"
