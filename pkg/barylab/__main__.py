from barylab.cli import app

app(prog_name="barylab")
