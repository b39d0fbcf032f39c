package app;

import java.io.IOException;
import java.io.InputStream;
import java.util.Properties;

// Configuration values read from a properties file.
public class Config {
    private final Properties values = new Properties();

    public static Config load(String path) throws IOException {
        Config config = new Config();
        try (InputStream in = Config.class.getResourceAsStream(path)) {
            config.values.load(in);
        }
        return config;
    }

    public int port() {
        return Integer.parseInt(values.getProperty("port", "8080"));
    }
}
